#include "sqcodes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqcodes/errors.hpp"
#include "sqcodes/rng.hpp"

namespace sqcodes {

namespace {

using Clock = std::chrono::steady_clock;
using Rational = boost::multiprecision::cpp_rational;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t checked_pow_u64(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      throw OutOfRange("power exceeds 64 bits");
    out *= base;
  }
  return out;
}

// Runs fn once per trial with a per-index rng stream, so results do not
// depend on how trials land on workers.  Outcomes are small integers.
std::vector<std::int64_t> run_trials(
    std::uint64_t trials, std::uint64_t seed,
    const std::function<std::int64_t(Rng&)>& fn) {
  std::vector<std::int64_t> out(trials, 0);
  if (trials == 0) return out;
  unsigned workers = worker_count();
  if (workers > trials) workers = static_cast<unsigned>(trials);
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = trial_rng(seed, t);
      out[t] = fn(rng);
    }
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mutex;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        if (stop.load(std::memory_order_relaxed)) return;
        std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) return;
        try {
          Rng rng = trial_rng(seed, t);
          out[t] = fn(rng);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
          stop.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

std::map<std::int64_t, std::uint64_t> histogram(
    const std::vector<std::int64_t>& outcomes) {
  std::map<std::int64_t, std::uint64_t> h;
  for (std::int64_t v : outcomes) ++h[v];
  return h;
}

Estimate bernoulli(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) return {};
  double p = static_cast<double>(hits) / static_cast<double>(trials);
  double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return {p, se};
}

// Square dim via two routes that must agree: the span of pairwise products
// and the rank of the monomial evaluation matrix.
std::size_t square_dim_checked(const LinearCode& c) {
  std::size_t dsq = schur_square_dim(c);
  std::size_t kd = ev_kernel_dim(c);
  std::size_t m = c.k() * (c.k() + 1) / 2;
  if (kd + dsq != m)
    throw std::logic_error("square dim and evaluation kernel dim disagree");
  if (dsq > std::min(c.n(), m))
    throw std::logic_error("square dim exceeds its cap");
  return dsq;
}

std::string dim_key(std::int64_t v) { return "dim:" + std::to_string(v); }

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("SQCODES_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

nlohmann::ordered_json ExperimentReport::to_json(bool include_elapsed) const {
  nlohmann::ordered_json j;
  j["params"] = params;
  nlohmann::ordered_json est = nlohmann::ordered_json::object();
  for (const auto& [name, e] : estimates) {
    est[name] = {{"value", e.value}, {"stderr", e.stderr_value}};
  }
  j["estimates"] = est;
  nlohmann::ordered_json tal = nlohmann::ordered_json::object();
  for (const auto& [name, count] : tallies) tal[name] = count;
  j["tallies"] = tal;
  if (include_elapsed) j["elapsed_s"] = elapsed_s;
  j["version"] = kVersion;
  return j;
}

std::string ExperimentReport::to_csv(bool include_elapsed) const {
  std::ostringstream os;
  os << "key,value,stderr\n";
  auto scalar = [](const nlohmann::ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto& [key, v] : params.items())
    os << "param:" << key << "," << scalar(v) << ",\n";
  for (const auto& [name, e] : estimates)
    os << "estimate:" << name << ","
       << nlohmann::ordered_json(e.value).dump() << ","
       << nlohmann::ordered_json(e.stderr_value).dump() << "\n";
  for (const auto& [name, count] : tallies)
    os << "tally:" << name << "," << count << ",\n";
  if (include_elapsed)
    os << "elapsed_s," << nlohmann::ordered_json(elapsed_s).dump() << ",\n";
  os << "version," << kVersion << ",\n";
  return os.str();
}

std::string ExperimentReport::to_text(bool include_elapsed) const {
  std::ostringstream os;
  auto scalar = [](const nlohmann::ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  os << "params:";
  for (const auto& [key, v] : params.items())
    os << " " << key << "=" << scalar(v);
  os << "\n";
  for (const auto& [name, e] : estimates)
    os << name << " = " << nlohmann::ordered_json(e.value).dump() << " +/- "
       << nlohmann::ordered_json(e.stderr_value).dump() << "\n";
  for (const auto& [name, count] : tallies)
    os << "  " << name << " " << count << "\n";
  if (include_elapsed)
    os << "elapsed_s = " << nlohmann::ordered_json(elapsed_s).dump() << "\n";
  os << "version: " << kVersion << "\n";
  return os.str();
}

ExactExpectation exact_expectation(std::uint32_t q, std::size_t k,
                                   ZeroCountMode mode, std::uint64_t budget) {
  FieldPtr ctx = FieldCtx::make(q);
  if (k == 0) throw OutOfRange("exact_expectation: k must be positive");
  std::size_t m = k * (k + 1) / 2;
  std::size_t t2 = k * (k - 1) / 2;  // free off-diagonal coefficients
  std::uint64_t forms = checked_pow_u64(q, t2);
  if (forms > budget) throw BudgetExceeded("exact_expectation: q^(k(k-1)/2) over budget");

  QuadraticForm zero = QuadraticForm::zero(ctx, k);
  std::vector<std::size_t> off_pos;
  off_pos.reserve(t2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) off_pos.push_back(zero.index(i, j));

  const unsigned mk = static_cast<unsigned>(m - k);
  BigInt num_sum = 0;
  VecFq coeffs(m, 0);
  std::vector<Fe> digits(t2, 0);
  for (std::uint64_t it = 0;; ++it) {
    QuadraticForm f(ctx, k, coeffs);
    std::uint64_t z = (mode == ZeroCountMode::Closed) ? zero_count_closed(f)
                                                      : zero_count_brute(f);
    num_sum += boost::multiprecision::pow(BigInt(z), mk);
    if (it + 1 == forms) break;
    // odometer over the off-diagonal coefficients
    std::size_t d = 0;
    while (d < t2) {
      Fe next_digit = static_cast<Fe>(digits[d] + 1);
      if (next_digit < q) {
        digits[d] = next_digit;
        coeffs[off_pos[d]] = next_digit;
        break;
      }
      digits[d] = 0;
      coeffs[off_pos[d]] = 0;
      ++d;
    }
  }

  BigInt den_raw = boost::multiprecision::pow(BigInt(q),
                                              static_cast<unsigned>(k * (m - k)));
  Rational rat(num_sum, den_raw);
  ExactExpectation out;
  out.q = q;
  out.k = k;
  out.m = m;
  out.num = boost::multiprecision::numerator(rat);
  out.den = boost::multiprecision::denominator(rat);
  out.value = rat.convert_to<double>();
  out.fraction = out.num.str() + "/" + out.den.str();
  return out;
}

ExperimentReport mc_kernel_size(std::uint32_t q, std::size_t k, std::size_t n,
                                SamplerModel model, std::uint64_t trials,
                                std::uint64_t seed) {
  FieldPtr ctx = FieldCtx::make(q);
  auto t0 = Clock::now();
  std::size_t m = k * (k + 1) / 2;
  auto outcomes = run_trials(trials, seed, [&](Rng& rng) -> std::int64_t {
    LinearCode c = sample_code(ctx, n, k, model, rng);
    std::size_t dsq = square_dim_checked(c);
    // kernel of the evaluation map on all k(k+1)/2 monomials of the sampled
    // k rows; equals m - dim of the square even if the row space collapsed
    return static_cast<std::int64_t>(m - dsq);
  });
  auto hist = histogram(outcomes);

  ExperimentReport rep;
  rep.params = {{"experiment", "mc-kernel"}, {"q", q},         {"k", k},
                {"n", n},                    {"model", model_name(model)},
                {"trials", trials},          {"seed", seed}};
  long double sum = 0.0L, sum_sq = 0.0L;
  std::uint64_t min_hits = 0;
  std::int64_t min_dim = static_cast<std::int64_t>(m - std::min(n, m));
  for (const auto& [kd, count] : hist) {
    long double x = std::pow(static_cast<long double>(q),
                             static_cast<long double>(kd));
    sum += x * count;
    sum_sq += x * x * count;
    if (kd == min_dim) min_hits = count;
    rep.tallies.emplace_back("kernel_dim:" + std::to_string(kd), count);
  }
  double mean = trials ? static_cast<double>(sum / trials) : 0.0;
  double se = 0.0;
  if (trials > 1) {
    long double var = (sum_sq - sum * sum / trials) / (trials - 1);
    if (var < 0) var = 0;
    se = static_cast<double>(std::sqrt(var / trials));
  }
  rep.estimates.emplace_back("mean_kernel_size", Estimate{mean, se});
  rep.estimates.emplace_back("p_min_kernel", bernoulli(min_hits, trials));
  rep.elapsed_s = seconds_since(t0);
  return rep;
}

ExperimentReport mc_square_full(std::uint32_t q, std::size_t k, std::size_t n,
                                SamplerModel model, std::uint64_t trials,
                                std::uint64_t seed) {
  FieldPtr ctx = FieldCtx::make(q);
  auto t0 = Clock::now();
  std::size_t m = k * (k + 1) / 2;
  std::size_t cap = std::min(n, m);
  auto outcomes = run_trials(trials, seed, [&](Rng& rng) -> std::int64_t {
    LinearCode c = sample_code(ctx, n, k, model, rng);
    return static_cast<std::int64_t>(square_dim_checked(c));
  });
  auto hist = histogram(outcomes);

  ExperimentReport rep;
  rep.params = {{"experiment", "mc-square"}, {"q", q},         {"k", k},
                {"n", n},                    {"model", model_name(model)},
                {"trials", trials},          {"seed", seed}};
  std::uint64_t full_hits = 0;
  for (const auto& [dim, count] : hist) {
    if (dim == static_cast<std::int64_t>(cap)) full_hits = count;
    rep.tallies.emplace_back(dim_key(dim), count);
  }
  rep.estimates.emplace_back("p_full", bernoulli(full_hits, trials));
  rep.elapsed_s = seconds_since(t0);
  return rep;
}

ExperimentReport mc_dim_at_large_n(std::uint32_t q, std::size_t k,
                                   std::size_t s, SamplerModel model,
                                   std::uint64_t trials, std::uint64_t seed) {
  FieldPtr ctx = FieldCtx::make(q);
  auto t0 = Clock::now();
  std::size_t m = k * (k + 1) / 2;
  std::size_t n = m + s;
  auto outcomes = run_trials(trials, seed, [&](Rng& rng) -> std::int64_t {
    LinearCode c = sample_code(ctx, n, k, model, rng);
    return static_cast<std::int64_t>(square_dim_checked(c));
  });
  auto hist = histogram(outcomes);

  ExperimentReport rep;
  rep.params = {{"experiment", "mc-large-n"}, {"q", q},
                {"k", k},                     {"s", s},
                {"n", n},                     {"model", model_name(model)},
                {"trials", trials},           {"seed", seed}};
  std::uint64_t full_hits = 0;
  for (const auto& [dim, count] : hist) {
    if (dim == static_cast<std::int64_t>(m)) full_hits = count;
    rep.tallies.emplace_back(dim_key(dim), count);
  }
  rep.estimates.emplace_back("p_full", bernoulli(full_hits, trials));
  // when the exact expectation is affordable, report the failure bound too
  std::size_t t2 = k * (k - 1) / 2;
  bool affordable = true;
  std::uint64_t forms = 1;
  for (std::size_t i = 0; i < t2 && affordable; ++i) {
    if (forms > kExpectBudget / q) affordable = false;
    forms *= q;
  }
  if (affordable && forms <= kExpectBudget) {
    ExactExpectation e = exact_expectation(q, k);
    double defect = square_defect_bound(q, s, e.value);
    rep.estimates.emplace_back("defect_bound", Estimate{defect, 0.0});
    rep.estimates.emplace_back("p_full_bound", Estimate{1.0 - defect, 0.0});
  }
  rep.elapsed_s = seconds_since(t0);
  return rep;
}

ExperimentReport mc_dual_distance(std::uint32_t q, std::size_t k,
                                  std::uint64_t trials, std::uint64_t seed,
                                  double delta, std::uint64_t budget) {
  FieldPtr ctx = FieldCtx::make(q);
  auto t0 = Clock::now();
  std::size_t m = k * (k + 1) / 2;
  std::size_t n = m;  // saturated length: the square can fill the space
  auto outcomes = run_trials(trials, seed, [&](Rng& rng) -> std::int64_t {
    LinearCode c = sample_code(ctx, n, k, SamplerModel::SystematicC, rng);
    LinearCode sq = schur_product(c, c);
    if (ev_kernel_dim(c) + sq.k() != m)
      throw std::logic_error("square dim and evaluation kernel dim disagree");
    if (sq.k() == n) return -1;  // dual is trivial: no distance to measure
    return static_cast<std::int64_t>(min_distance(dual(sq), budget));
  });
  auto hist = histogram(outcomes);

  ExperimentReport rep;
  rep.params = {{"experiment", "mc-dual"}, {"q", q},       {"k", k},
                {"n", n},                  {"delta", delta},
                {"trials", trials},        {"seed", seed}};
  std::uint64_t trivial = 0, small = 0;
  double thr = delta * static_cast<double>(n);
  for (const auto& [d, count] : hist) {
    if (d < 0) {
      trivial = count;
      continue;
    }
    if (static_cast<double>(d) <= thr + 1e-12) small += count;
    rep.tallies.emplace_back("dmin:" + std::to_string(d), count);
  }
  if (trivial) rep.tallies.emplace_back("dmin:inf", trivial);
  rep.estimates.emplace_back("p_trivial_dual", bernoulli(trivial, trials));
  rep.estimates.emplace_back("p_dmin_le_delta_n", bernoulli(small, trials));
  rep.elapsed_s = seconds_since(t0);
  return rep;
}

ExperimentReport mc_model_compare(std::uint32_t q, std::size_t k,
                                  std::size_t n, std::uint64_t trials,
                                  std::uint64_t seed) {
  FieldPtr ctx = FieldCtx::make(q);
  auto t0 = Clock::now();
  std::size_t m = k * (k + 1) / 2;
  std::size_t cap = std::min(n, m);

  ExperimentReport rep;
  rep.params = {{"experiment", "mc-models"}, {"q", q},     {"k", k},
                {"n", n},                    {"trials", trials},
                {"seed", seed}};
  const SamplerModel models[] = {SamplerModel::SystematicC,
                                 SamplerModel::MatrixA,
                                 SamplerModel::UniformU};
  for (std::size_t im = 0; im < 3; ++im) {
    SamplerModel model = models[im];
    std::uint64_t submaster = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (im + 1)));
    auto outcomes = run_trials(trials, submaster, [&](Rng& rng) -> std::int64_t {
      LinearCode c = sample_code(ctx, n, k, model, rng);
      std::size_t dsq = square_dim_checked(c);
      std::int64_t full = (dsq == cap) ? 1 : 0;
      std::int64_t rankdef = (c.k() < k) ? 1 : 0;
      return full + 2 * rankdef;
    });
    auto hist = histogram(outcomes);
    std::uint64_t full_hits = 0, rankdef_hits = 0;
    const char* labels[] = {"notfull", "full", "notfull_rankdef",
                            "full_rankdef"};
    std::string prefix = model_name(model);
    for (const auto& [code, count] : hist) {
      if (code & 1) full_hits += count;
      if (code & 2) rankdef_hits += count;
      rep.tallies.emplace_back(prefix + ":" + labels[code], count);
    }
    rep.estimates.emplace_back("p_full_" + prefix, bernoulli(full_hits, trials));
    if (model == SamplerModel::MatrixA) {
      rep.estimates.emplace_back("p_rankdef_matrix",
                                 bernoulli(rankdef_hits, trials));
      double bound = n >= k ? std::pow(static_cast<double>(q),
                                       -static_cast<double>(n - k))
                            : 1.0;
      rep.estimates.emplace_back("rankdef_bound", Estimate{bound, 0.0});
    }
  }
  rep.elapsed_s = seconds_since(t0);
  return rep;
}

double entropy_hq(std::uint32_t q, double x) {
  if (q < 2) throw OutOfRange("entropy_hq: q must be at least 2");
  double top = 1.0 - 1.0 / static_cast<double>(q);
  if (!(x > 0.0) || x > top)
    throw DomainError("entropy_hq: x outside (0, 1 - 1/q]");
  double lq = std::log(static_cast<double>(q));
  double h = x * std::log(static_cast<double>(q - 1)) / lq -
             x * std::log(x) / lq;
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x) / lq;
  return h;
}

}  // namespace sqcodes
