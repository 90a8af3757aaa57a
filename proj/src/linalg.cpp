#include "sqcodes/linalg.hpp"

#include <algorithm>
#include <bit>

namespace sqcodes {

MatFq MatFq::identity(FieldPtr ctx, std::size_t k) {
  MatFq m(std::move(ctx), k, k);
  for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
  return m;
}

MatFq MatFq::from_rows(FieldPtr ctx, std::size_t cols,
                       const std::vector<std::vector<std::uint32_t>>& rows) {
  MatFq m(ctx, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("row length != cols");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = ctx->check(rows[i][j]);
  }
  return m;
}

void MatFq::set_row(std::size_t i, const VecFq& r) {
  if (r.size() != cols_) throw DimensionMismatch("row length != cols");
  std::copy(r.begin(), r.end(), row_ptr(i));
}

SpanBuilder::SpanBuilder(FieldPtr ctx, std::size_t cols)
    : SpanBuilder(ctx, cols, ctx->q() == 2) {}

SpanBuilder::SpanBuilder(FieldPtr ctx, std::size_t cols, bool use_packed)
    : ctx_(std::move(ctx)), cols_(cols), packed_(use_packed) {
  if (packed_ && ctx_->q() != 2)
    throw FieldMismatch("packed rows require q = 2");
  words_ = (cols_ + 63) / 64;
  scratch_.resize(cols_);
}

void SpanBuilder::clear() {
  pivots_.clear();
  rows_.clear();
  prows_.clear();
}

bool SpanBuilder::insert(const Fe* row) {
  return packed_ ? insert_packed(row) : insert_generic(row);
}

bool SpanBuilder::insert_generic(const Fe* row) {
  const FieldCtx& F = *ctx_;
  scratch_.assign(row, row + cols_);
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    Fe c = scratch_[pivots_[t]];
    if (c == 0) continue;
    const Fe* r = rows_[t].data();
    for (std::size_t j = pivots_[t]; j < cols_; ++j)
      scratch_[j] = F.sub(scratch_[j], F.mul(c, r[j]));
  }
  std::size_t lead = cols_;
  for (std::size_t j = 0; j < cols_; ++j)
    if (scratch_[j] != 0) {
      lead = j;
      break;
    }
  if (lead == cols_) return false;
  Fe ic = F.inv(scratch_[lead]);
  for (std::size_t j = lead; j < cols_; ++j)
    scratch_[j] = F.mul(scratch_[j], ic);
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    Fe c = rows_[t][lead];
    if (c == 0) continue;
    Fe* r = rows_[t].data();
    for (std::size_t j = lead; j < cols_; ++j)
      r[j] = F.sub(r[j], F.mul(c, scratch_[j]));
  }
  std::size_t pos =
      std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  rows_.insert(rows_.begin() + pos, scratch_);
  return true;
}

bool SpanBuilder::insert_packed(const Fe* row) {
  std::vector<std::uint64_t> w(words_, 0);
  for (std::size_t j = 0; j < cols_; ++j)
    if (row[j]) w[j >> 6] |= 1ULL << (j & 63);
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    std::size_t p = pivots_[t];
    if (w[p >> 6] >> (p & 63) & 1) {
      const std::uint64_t* r = prows_[t].data();
      for (std::size_t j = p >> 6; j < words_; ++j) w[j] ^= r[j];
    }
  }
  std::size_t lead = cols_;
  for (std::size_t j = 0; j < words_; ++j)
    if (w[j]) {
      lead = j * 64 + std::size_t(std::countr_zero(w[j]));
      break;
    }
  if (lead >= cols_) return false;
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    if (prows_[t][lead >> 6] >> (lead & 63) & 1) {
      std::uint64_t* r = prows_[t].data();
      for (std::size_t j = lead >> 6; j < words_; ++j) r[j] ^= w[j];
    }
  }
  std::size_t pos =
      std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  prows_.insert(prows_.begin() + pos, std::move(w));
  return true;
}

MatFq SpanBuilder::basis() const {
  MatFq b(ctx_, pivots_.size(), cols_);
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    if (packed_) {
      for (std::size_t j = 0; j < cols_; ++j)
        b.at(t, j) = Fe(prows_[t][j >> 6] >> (j & 63) & 1);
    } else {
      b.set_row(t, rows_[t]);
    }
  }
  return b;
}

namespace {

RrefResult rref_with(const MatFq& m, bool packed) {
  SpanBuilder sb(m.ctx(), m.cols(), packed);
  for (std::size_t i = 0; i < m.rows(); ++i) sb.insert(m.row_ptr(i));
  MatFq basis = sb.basis();
  MatFq out(m.ctx(), m.rows(), m.cols());
  std::vector<std::size_t> pivots;
  pivots.reserve(sb.rank());
  for (std::size_t i = 0; i < sb.rank(); ++i) out.set_row(i, basis.row(i));
  // recover pivot columns from the reduced rows
  for (std::size_t i = 0; i < sb.rank(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (out.at(i, j) != 0) {
        pivots.push_back(j);
        break;
      }
  return RrefResult{std::move(out), sb.rank(), std::move(pivots)};
}

}  // namespace

namespace detail {
RrefResult rref_generic(const MatFq& m) { return rref_with(m, false); }
RrefResult rref_packed_f2(const MatFq& m) { return rref_with(m, true); }
}  // namespace detail

RrefResult rref(const MatFq& m) {
  return rref_with(m, m.ctx()->q() == 2);
}

MatFq kernel_basis(const MatFq& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  const FieldCtx& F = *m.ctx();
  SpanBuilder sb(m.ctx(), m.cols());
  VecFq x(m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::fill(x.begin(), x.end(), 0);
    x[f] = 1;
    for (std::size_t i = 0; i < r.rank; ++i)
      x[r.pivots[i]] = F.neg(r.mat.at(i, f));
    sb.insert(x);
  }
  return sb.basis();
}

MatFq mat_mul(const MatFq& a, const MatFq& b) {
  require_same_field(*a.ctx(), *b.ctx());
  if (a.cols() != b.rows())
    throw DimensionMismatch("inner dimensions differ in matrix product");
  const FieldCtx& F = *a.ctx();
  MatFq c(a.ctx(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      Fe v = a.at(i, t);
      if (v == 0) continue;
      const Fe* br = b.row_ptr(t);
      Fe* cr = c.row_ptr(i);
      for (std::size_t j = 0; j < b.cols(); ++j)
        cr[j] = F.add(cr[j], F.mul(v, br[j]));
    }
  return c;
}

VecFq mat_vec(const MatFq& m, const VecFq& x) {
  if (x.size() != m.cols())
    throw DimensionMismatch("vector length != matrix columns");
  const FieldCtx& F = *m.ctx();
  VecFq y(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Fe acc = 0;
    const Fe* r = m.row_ptr(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
      acc = F.add(acc, F.mul(r[j], x[j]));
    y[i] = acc;
  }
  return y;
}

MatFq transpose(const MatFq& m) {
  MatFq t(m.ctx(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

MatFq mat_inverse(const MatFq& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  std::size_t k = m.rows();
  MatFq aug(m.ctx(), k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, k + i) = 1;
  }
  RrefResult r = rref(aug);
  if (r.rank < k || r.pivots[k - 1] != k - 1)
    throw NotFullRank("matrix is singular");
  MatFq inv(m.ctx(), k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inv.at(i, j) = r.mat.at(i, k + j);
  return inv;
}

}  // namespace sqcodes
