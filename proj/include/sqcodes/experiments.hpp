#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sqcodes/codes.hpp"
#include "sqcodes/quadforms.hpp"

namespace sqcodes {

inline constexpr const char* kVersion = "sqcodes 0.1.0";

struct Estimate {
  double value = 0.0;
  double stderr_value = 0.0;  // sqrt(p(1-p)/trials) for Bernoulli fractions
};

// Uniform result record for every Monte-Carlo experiment.  All estimates are
// derived from the integer tallies after the trial loop, so reports are
// byte-identical for a given (params, seed) regardless of worker count.
// elapsed_s is measured wall time; serialization omits it unless asked,
// keeping default outputs reproducible.
struct ExperimentReport {
  nlohmann::ordered_json params;
  std::vector<std::pair<std::string, Estimate>> estimates;
  std::vector<std::pair<std::string, std::uint64_t>> tallies;
  double elapsed_s = 0.0;

  nlohmann::ordered_json to_json(bool include_elapsed = false) const;
  std::string to_csv(bool include_elapsed = false) const;
  std::string to_text(bool include_elapsed = false) const;
};

enum class ZeroCountMode { Closed, Brute };

inline constexpr std::uint64_t kExpectBudget = 1ULL << 22;

// E[#ker of the monomial evaluation map] for a random systematic [m, k] code
// with m = k(k+1)/2: the exact rational
//   sum over zero-diagonal forms Q of (|zeros(Q)| / q^k)^(m-k).
struct ExactExpectation {
  std::uint32_t q = 0;
  std::size_t k = 0, m = 0;
  BigInt num, den;       // reduced fraction, value >= 1
  double value = 0.0;
  std::string fraction;  // "num/den"
};

ExactExpectation exact_expectation(std::uint32_t q, std::size_t k,
                                   ZeroCountMode mode = ZeroCountMode::Closed,
                                   std::uint64_t budget = kExpectBudget);

ExperimentReport mc_kernel_size(std::uint32_t q, std::size_t k, std::size_t n,
                                SamplerModel model, std::uint64_t trials,
                                std::uint64_t seed);

ExperimentReport mc_square_full(std::uint32_t q, std::size_t k, std::size_t n,
                                SamplerModel model, std::uint64_t trials,
                                std::uint64_t seed);

ExperimentReport mc_dim_at_large_n(std::uint32_t q, std::size_t k,
                                   std::size_t s, SamplerModel model,
                                   std::uint64_t trials, std::uint64_t seed);

ExperimentReport mc_dual_distance(std::uint32_t q, std::size_t k,
                                  std::uint64_t trials, std::uint64_t seed,
                                  double delta = 0.1,
                                  std::uint64_t budget = kMinDistBudget);

ExperimentReport mc_model_compare(std::uint32_t q, std::size_t k,
                                  std::size_t n, std::uint64_t trials,
                                  std::uint64_t seed);

// Failure bound for the saturated regime: the probability that a random
// [m + s, k] systematic code misses full square dimension is at most
// ((2q-1)/q^2)^s * (E - 1), E = exact_expectation(q, k).value.
inline double square_defect_bound(std::uint32_t q, std::size_t s, double e) {
  double ratio = (2.0 * q - 1.0) / (double(q) * q);
  double bound = 1.0;
  for (std::size_t i = 0; i < s; ++i) bound *= ratio;
  return bound * (e - 1.0);
}

// q-ary entropy x log_q(q-1) - x log_q x - (1-x) log_q(1-x), 0 < x <= 1-1/q.
double entropy_hq(std::uint32_t q, double x);

// Worker cap: SQCODES_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace sqcodes
