#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqcodes/linalg.hpp"
#include "sqcodes/rng.hpp"

namespace sqcodes {

// Linear [n, k] code, held as its reduced-row-echelon generator so every
// code has exactly one representation and equality is structural.
class LinearCode {
 public:
  // Row space of an arbitrary generator; the dimension is its rank.
  static LinearCode from_generator(const MatFq& rows);
  // [I_k | A] for a k x (n-k) matrix A; already in reduced echelon form.
  static LinearCode from_systematic(const FieldPtr& ctx, const MatFq& a);

  const FieldPtr& ctx() const { return gen_.ctx(); }
  std::size_t n() const { return gen_.cols(); }
  std::size_t k() const { return gen_.rows(); }
  const MatFq& generator() const { return gen_; }

  bool operator==(const LinearCode& o) const { return gen_ == o.gen_; }
  bool operator!=(const LinearCode& o) const { return gen_ != o.gen_; }

 private:
  explicit LinearCode(MatFq gen) : gen_(std::move(gen)) {}
  MatFq gen_;
};

enum class SamplerModel {
  SystematicC,  // [I_k | A], A uniform
  MatrixA,      // row space of a uniform k x n matrix (dim can drop)
  UniformU      // uniform over [n, k] codes, by full-rank rejection
};

const char* model_name(SamplerModel m);
SamplerModel model_from_name(const std::string& s);

LinearCode sample_code(const FieldPtr& ctx, std::size_t n, std::size_t k,
                       SamplerModel model, Rng& rng);

// Componentwise-product span ("Schur product") of two codes of equal length.
LinearCode schur_product(const LinearCode& a, const LinearCode& b);
LinearCode schur_power(const LinearCode& c, std::size_t d);
// dim of C * C without materializing the code; stops as soon as the span
// fills F_q^n.
std::size_t schur_square_dim(const LinearCode& c);

LinearCode dual(const LinearCode& c);

inline constexpr std::uint64_t kMinDistBudget = 1ULL << 24;
std::size_t min_distance(const LinearCode& c,
                         std::uint64_t budget = kMinDistBudget);

LinearCode puncture(const LinearCode& c,
                    const std::vector<std::size_t>& positions);
// t distinct positions; by default drawn among the last n - k coordinates
// (the non-systematic part), optionally among all n.
std::vector<std::size_t> sample_puncture_positions(std::size_t n,
                                                   std::size_t k,
                                                   std::size_t t, Rng& rng,
                                                   bool tail_only = true);

// dim ker of the evaluation map sending each quadratic monomial x_i x_j
// (i <= j) to its values at the generator's columns.  Computed from the rank
// of that k(k+1)/2 x n matrix, independently of schur_product.
std::size_t ev_kernel_dim(const LinearCode& c);

LinearCode rs_code(const FieldPtr& ctx, std::size_t n, std::size_t k,
                   const VecFq& points);
LinearCode rs_code(const FieldPtr& ctx, std::size_t n, std::size_t k);

struct DistinguisherReport {
  std::size_t n = 0, k = 0;
  std::size_t dim_square = 0;
  std::size_t expected_dim = 0;  // min(n, k(k+1)/2)
  std::size_t deficiency = 0;    // expected_dim - dim_square
  std::size_t threshold = 1;
  bool structured = false;       // deficiency >= threshold
};

DistinguisherReport distinguish(const LinearCode& c, std::size_t threshold = 1);

bool is_subcode(const LinearCode& inner, const LinearCode& outer);

// Text format: header "q n k", then k generator rows of n entries, ASCII
// decimal, single spaces, each row newline-terminated.
LinearCode parse_code_text(const std::string& text);
std::string code_to_text(const LinearCode& c);
LinearCode read_code_file(const std::string& path);
void write_code_file(const LinearCode& c, const std::string& path);

}  // namespace sqcodes
