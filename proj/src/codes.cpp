#include "sqcodes/codes.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sqcodes {

LinearCode LinearCode::from_generator(const MatFq& rows) {
  if (rows.cols() < 1) throw OutOfRange("code length must be >= 1");
  RrefResult r = rref(rows);
  MatFq gen(rows.ctx(), r.rank, rows.cols());
  for (std::size_t i = 0; i < r.rank; ++i) gen.set_row(i, r.mat.row(i));
  return LinearCode(std::move(gen));
}

LinearCode LinearCode::from_systematic(const FieldPtr& ctx, const MatFq& a) {
  require_same_field(*ctx, *a.ctx());
  std::size_t k = a.rows(), n = k + a.cols();
  if (n < 1) throw OutOfRange("code length must be >= 1");
  MatFq gen(ctx, k, n);
  for (std::size_t i = 0; i < k; ++i) {
    gen.at(i, i) = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) gen.at(i, k + j) = a.at(i, j);
  }
  return LinearCode(std::move(gen));
}

const char* model_name(SamplerModel m) {
  switch (m) {
    case SamplerModel::SystematicC: return "systematic";
    case SamplerModel::MatrixA: return "matrix";
    case SamplerModel::UniformU: return "uniform";
  }
  throw OutOfRange("unknown sampler model");
}

SamplerModel model_from_name(const std::string& s) {
  if (s == "systematic") return SamplerModel::SystematicC;
  if (s == "matrix") return SamplerModel::MatrixA;
  if (s == "uniform") return SamplerModel::UniformU;
  throw ParseError("unknown model '" + s + "'");
}

LinearCode sample_code(const FieldPtr& ctx, std::size_t n, std::size_t k,
                       SamplerModel model, Rng& rng) {
  if (n < 1 || k > n) throw OutOfRange("need 1 <= n and 0 <= k <= n");
  std::uint32_t q = ctx->q();
  switch (model) {
    case SamplerModel::SystematicC: {
      MatFq a(ctx, k, n - k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j + k < n; ++j)
          a.at(i, j) = Fe(rng.below(q));
      return LinearCode::from_systematic(ctx, a);
    }
    case SamplerModel::MatrixA: {
      MatFq m(ctx, k, n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Fe(rng.below(q));
      return LinearCode::from_generator(m);
    }
    case SamplerModel::UniformU: {
      // Rejection on full rank is uniform over [n,k] codes: every such code
      // has the same number |GL_k(F_q)| of full-rank generator matrices.
      for (;;) {
        MatFq m(ctx, k, n);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Fe(rng.below(q));
        LinearCode c = LinearCode::from_generator(m);
        if (c.k() == k) return c;
      }
    }
  }
  throw OutOfRange("unknown sampler model");
}

namespace {

void product_row(const FieldCtx& F, const Fe* a, const Fe* b, std::size_t n,
                 VecFq& out) {
  out.resize(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = F.mul(a[t], b[t]);
}

}  // namespace

LinearCode schur_product(const LinearCode& a, const LinearCode& b) {
  require_same_field(*a.ctx(), *b.ctx());
  if (a.n() != b.n()) throw LengthMismatch("codes have different lengths");
  const FieldCtx& F = *a.ctx();
  std::size_t n = a.n();
  SpanBuilder sb(a.ctx(), n);
  VecFq prod;
  bool same = a == b;  // products are symmetric, so i <= j suffices
  for (std::size_t i = 0; i < a.k() && !sb.full(); ++i)
    for (std::size_t j = same ? i : 0; j < b.k() && !sb.full(); ++j) {
      product_row(F, a.generator().row_ptr(i), b.generator().row_ptr(j), n,
                  prod);
      sb.insert(prod);
    }
  return LinearCode::from_generator(sb.basis());
}

LinearCode schur_power(const LinearCode& c, std::size_t d) {
  if (d < 1) throw OutOfRange("power must be >= 1");
  LinearCode r = c;
  for (std::size_t i = 1; i < d; ++i) r = schur_product(r, c);
  return r;
}

std::size_t schur_square_dim(const LinearCode& c) {
  const FieldCtx& F = *c.ctx();
  std::size_t n = c.n();
  SpanBuilder sb(c.ctx(), n);
  VecFq prod;
  for (std::size_t i = 0; i < c.k() && !sb.full(); ++i)
    for (std::size_t j = i; j < c.k() && !sb.full(); ++j) {
      product_row(F, c.generator().row_ptr(i), c.generator().row_ptr(j), n,
                  prod);
      sb.insert(prod);
    }
  return sb.rank();
}

LinearCode dual(const LinearCode& c) {
  return LinearCode::from_generator(kernel_basis(c.generator()));
}

std::size_t min_distance(const LinearCode& c, std::uint64_t budget) {
  if (c.k() == 0) throw EmptyCode("zero code has no nonzero codewords");
  const FieldCtx& F = *c.ctx();
  std::uint32_t q = F.q();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < c.k(); ++i) {
    if (total > budget / q)
      throw BudgetExceeded("q^k codewords exceed enumeration budget");
    total *= q;
  }
  std::size_t n = c.n();
  std::vector<Fe> msg(c.k(), 0);
  VecFq cw(n, 0);
  auto add_multiple = [&](std::size_t row, Fe delta) {
    if (delta == 0) return;
    const Fe* r = c.generator().row_ptr(row);
    for (std::size_t t = 0; t < n; ++t)
      cw[t] = F.add(cw[t], F.mul(delta, r[t]));
  };
  std::size_t best = n + 1;
  for (std::uint64_t it = 1; it < total; ++it) {
    std::size_t d = 0;
    while (std::uint32_t(msg[d]) + 1 == q) {  // rollover q-1 -> 0
      add_multiple(d, F.sub(0, msg[d]));
      msg[d] = 0;
      ++d;
    }
    add_multiple(d, F.sub(Fe(msg[d] + 1), msg[d]));
    ++msg[d];
    std::size_t w = 0;
    for (std::size_t t = 0; t < n; ++t) w += cw[t] != 0;
    if (w < best) best = w;
  }
  return best;
}

LinearCode puncture(const LinearCode& c,
                    const std::vector<std::size_t>& positions) {
  std::vector<bool> drop(c.n(), false);
  for (std::size_t p : positions) {
    if (p >= c.n()) throw InvalidPosition("puncture position out of range");
    if (drop[p]) throw InvalidPosition("duplicate puncture position");
    drop[p] = true;
  }
  if (positions.size() >= c.n())
    throw InvalidPosition("cannot puncture every position");
  MatFq m(c.ctx(), c.k(), c.n() - positions.size());
  for (std::size_t i = 0; i < c.k(); ++i) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < c.n(); ++j)
      if (!drop[j]) m.at(i, out++) = c.generator().at(i, j);
  }
  return LinearCode::from_generator(m);
}

std::vector<std::size_t> sample_puncture_positions(std::size_t n,
                                                   std::size_t k,
                                                   std::size_t t, Rng& rng,
                                                   bool tail_only) {
  std::size_t lo = tail_only ? k : 0;
  if (lo > n || t > n - lo)
    throw OutOfRange("not enough positions to puncture");
  std::vector<std::size_t> pool(n - lo);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = lo + i;
  for (std::size_t i = 0; i < t; ++i) {
    std::size_t j = i + std::size_t(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> out(pool.begin(), pool.begin() + t);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ev_kernel_dim(const LinearCode& c) {
  const FieldCtx& F = *c.ctx();
  std::size_t k = c.k(), n = c.n(), m = k * (k + 1) / 2;
  MatFq em(c.ctx(), m, n);
  std::size_t rix = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j, ++rix)
      for (std::size_t t = 0; t < n; ++t)
        em.at(rix, t) = F.mul(c.generator().at(i, t), c.generator().at(j, t));
  return m - rref(em).rank;
}

LinearCode rs_code(const FieldPtr& ctx, std::size_t n, std::size_t k,
                   const VecFq& points) {
  if (n > ctx->q()) throw TooLong("length exceeds field size");
  if (k > n) throw TooLong("dimension exceeds length");
  if (points.size() != n) throw LengthMismatch("need n evaluation points");
  std::vector<bool> used(ctx->q(), false);
  for (Fe pt : points) {
    if (pt >= ctx->q()) throw FieldError("evaluation point outside F_q");
    if (used[pt]) throw DuplicatePoint("evaluation points must be distinct");
    used[pt] = true;
  }
  MatFq gen(ctx, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    Fe acc = 1;
    for (std::size_t i = 0; i < k; ++i) {
      gen.at(i, j) = acc;
      acc = ctx->mul(acc, points[j]);
    }
  }
  return LinearCode::from_generator(gen);
}

LinearCode rs_code(const FieldPtr& ctx, std::size_t n, std::size_t k) {
  if (n > ctx->q()) throw TooLong("length exceeds field size");
  VecFq pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = Fe(i);
  return rs_code(ctx, n, k, pts);
}

DistinguisherReport distinguish(const LinearCode& c, std::size_t threshold) {
  if (threshold < 1) throw OutOfRange("threshold must be >= 1");
  DistinguisherReport r;
  r.n = c.n();
  r.k = c.k();
  r.threshold = threshold;
  r.expected_dim = std::min(c.n(), c.k() * (c.k() + 1) / 2);
  r.dim_square = schur_square_dim(c);
  r.deficiency = r.expected_dim - r.dim_square;
  r.structured = r.deficiency >= threshold;
  return r;
}

bool is_subcode(const LinearCode& inner, const LinearCode& outer) {
  require_same_field(*inner.ctx(), *outer.ctx());
  if (inner.n() != outer.n()) throw LengthMismatch("codes have different lengths");
  SpanBuilder sb(outer.ctx(), outer.n());
  for (std::size_t i = 0; i < outer.k(); ++i)
    sb.insert(outer.generator().row_ptr(i));
  for (std::size_t i = 0; i < inner.k(); ++i)
    if (sb.insert(inner.generator().row_ptr(i))) return false;
  return true;
}

LinearCode parse_code_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line");
  std::istringstream hdr(line);
  long long q = -1, n = -1, k = -1;
  if (!(hdr >> q >> n >> k)) throw ParseError("header must be 'q n k'");
  std::string extra;
  if (hdr >> extra) throw ParseError("trailing tokens in header");
  if (q < 2 || q > 65536) throw OutOfRange("q out of range");
  if (n < 1) throw OutOfRange("n must be >= 1");
  if (k < 0 || k > n) throw OutOfRange("need 0 <= k <= n");
  FieldPtr ctx = FieldCtx::make(std::uint32_t(q));
  MatFq m(ctx, std::size_t(k), std::size_t(n));
  for (long long i = 0; i < k; ++i) {
    if (!std::getline(in, line))
      throw ParseError("expected " + std::to_string(k) + " generator rows");
    std::istringstream row(line);
    for (long long j = 0; j < n; ++j) {
      long long v = -1;
      if (!(row >> v)) throw ParseError("row has fewer than n entries");
      if (v < 0 || v >= q) throw FieldError("entry out of range for F_q");
      m.at(std::size_t(i), std::size_t(j)) = Fe(v);
    }
    if (row >> extra) throw ParseError("row has more than n entries");
  }
  while (std::getline(in, line))
    if (!line.empty()) throw ParseError("trailing content after generator");
  LinearCode c = LinearCode::from_generator(m);
  if (c.k() != std::size_t(k))
    throw RankDeficient("generator rows are linearly dependent");
  return c;
}

std::string code_to_text(const LinearCode& c) {
  std::ostringstream out;
  out << c.ctx()->q() << ' ' << c.n() << ' ' << c.k() << '\n';
  for (std::size_t i = 0; i < c.k(); ++i) {
    for (std::size_t j = 0; j < c.n(); ++j) {
      if (j) out << ' ';
      out << std::uint32_t(c.generator().at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

LinearCode read_code_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_text(buf.str());
}

void write_code_file(const LinearCode& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << code_to_text(c);
}

}  // namespace sqcodes
