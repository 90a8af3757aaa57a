#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "sqcodes/linalg.hpp"

namespace sqcodes {

using BigInt = boost::multiprecision::cpp_int;

// Homogeneous quadratic form sum_{i<=j} a_ij x_i x_j on F_q^k.  Coefficients
// are stored in lexicographic (i,j) order with i <= j:
// (0,0), (0,1), ..., (0,k-1), (1,1), ..., (k-1,k-1).
class QuadraticForm {
 public:
  QuadraticForm(FieldPtr ctx, std::size_t k, VecFq coeffs);
  static QuadraticForm zero(FieldPtr ctx, std::size_t k);
  static QuadraticForm from_coeffs(FieldPtr ctx, std::size_t k,
                                   const std::vector<std::uint32_t>& coeffs);

  const FieldPtr& ctx() const { return ctx_; }
  std::size_t k() const { return k_; }
  const VecFq& coeffs() const { return coeffs_; }

  static std::size_t coeff_count(std::size_t k) { return k * (k + 1) / 2; }
  std::size_t index(std::size_t i, std::size_t j) const {  // i <= j
    return i * k_ - i * (i - 1) / 2 + (j - i);
  }
  Fe coeff(std::size_t i, std::size_t j) const { return coeffs_[index(i, j)]; }

  Fe eval(const Fe* x) const;
  Fe eval(const VecFq& x) const { return eval(x.data()); }

  // Polarization B(x,y) = Q(x+y) - Q(x) - Q(y).
  Fe bilinear(const VecFq& x, const VecFq& y) const;

  // Coordinate change: rows of t are the new basis vectors, and the result
  // satisfies result(y) = Q(y t) for every row vector y.
  QuadraticForm change_basis(const MatFq& t) const;

  bool operator==(const QuadraticForm& o) const {
    return ctx_->q() == o.ctx_->q() && k_ == o.k_ && coeffs_ == o.coeffs_;
  }

 private:
  FieldPtr ctx_;
  std::size_t k_;
  VecFq coeffs_;
};

// Matrix of the polarization form: M[i][j] = a_ij for i < j (symmetric) and
// M[i][i] = 2 a_ii, which vanishes in characteristic 2.
MatFq bilinear_matrix(const QuadraticForm& q);

struct RadicalBases {
  MatFq rad;   // radical of the polarization form
  MatFq rad0;  // subspace of rad where Q itself vanishes
};
RadicalBases radical_basis(const QuadraticForm& q);

// rank(Q) = k - dim rad0.  In odd characteristic rad0 = rad; in
// characteristic 2 the restriction of Q to rad is inv-Frobenius-linear, so
// rad0 is the kernel of a single linear functional on rad.
std::size_t qf_rank(const QuadraticForm& q);

inline constexpr std::uint64_t kZeroBruteBudget = 1ULL << 22;

std::uint64_t zero_count_brute(const QuadraticForm& q,
                               std::uint64_t budget = kZeroBruteBudget);
std::uint64_t zero_count_closed(const QuadraticForm& q);

struct IsotropicPair {
  VecFq v1, v2;  // B(v1,v2) = 1
  Fe q1 = 0, q2 = 0;  // Q(v1), Q(v2)
};

// Orthogonal splitting of F_q^k: radical + hyperbolic/symplectic planes +
// anisotropic leftover.  In odd characteristic every pair satisfies
// Q(v1) = Q(v2) = 0 and the residual has dimension <= 2; in characteristic 2
// the residual is empty and all pairs but possibly the last one are
// normalized to Q(v1) = Q(v2) = 0.  The cached values (pair q1/q2, the
// residual's restricted coefficients, Q on the radical basis) make the
// decomposition self-contained for recomposition.
struct Decomposition {
  MatFq radical;
  VecFq radical_values;  // Q on each radical row; zero in odd characteristic
  std::vector<IsotropicPair> pairs;
  MatFq residual;
  VecFq residual_form;  // coefficients of Q restricted to the residual rows
};

Decomposition decompose(const QuadraticForm& q);

// Rebuilds a form from its decomposition data, in the original coordinates.
QuadraticForm recompose(const FieldPtr& ctx, std::size_t k,
                        const Decomposition& d);

BigInt gbinom(std::size_t n, std::size_t k, std::uint32_t q);
BigInt n_fullrank(std::size_t k, std::uint32_t q);
BigInt n_rank(std::size_t k, std::size_t r, std::uint32_t q);
BigInt complement_count(std::size_t k, std::size_t h, std::uint32_t q);

struct RankCensus {
  std::uint32_t q;
  std::size_t k;
  std::vector<std::uint64_t> counts;  // counts[r] = #forms of rank r
};

inline constexpr std::uint64_t kCensusBudget = 1ULL << 20;

RankCensus census_brute(const FieldPtr& ctx, std::size_t k,
                        std::uint64_t budget = kCensusBudget);

// Number of h-dimensional subspaces (h = 1 or 2) on which the full-rank form
// Q restricts to a full-rank form.
std::uint64_t count_nondeg_planes_brute(const QuadraticForm& q, std::size_t h,
                                        std::uint64_t budget = 1ULL << 24);

// Closed form for the count above in the cases where it does not depend on
// the particular full-rank Q: odd q needs (h=1, k odd) or (h=2, k even);
// even q needs h=2.  Anything else is a DomainError.
BigInt r_formula(std::size_t k, std::size_t h, std::uint32_t q);

}  // namespace sqcodes
