#pragma once

#include <cstdint>
#include <vector>

#include "sqcodes/fq.hpp"

namespace sqcodes {

using VecFq = std::vector<Fe>;

// Dense row-major matrix over a shared field context.  Degenerate shapes
// (0 x c, r x 0) are legal and behave like empty sums/products.
class MatFq {
 public:
  MatFq(FieldPtr ctx, std::size_t rows, std::size_t cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static MatFq identity(FieldPtr ctx, std::size_t k);
  // Convenience builder; validates every entry against the field.
  static MatFq from_rows(FieldPtr ctx, std::size_t cols,
                         const std::vector<std::vector<std::uint32_t>>& rows);

  const FieldPtr& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fe at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Fe& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Fe* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }
  Fe* row_ptr(std::size_t i) { return a_.data() + i * cols_; }
  VecFq row(std::size_t i) const {
    return VecFq(row_ptr(i), row_ptr(i) + cols_);
  }
  void set_row(std::size_t i, const VecFq& r);

  bool operator==(const MatFq& o) const {
    return ctx_->q() == o.ctx_->q() && rows_ == o.rows_ && cols_ == o.cols_ &&
           a_ == o.a_;
  }
  bool operator!=(const MatFq& o) const { return !(*this == o); }

 private:
  FieldPtr ctx_;
  std::size_t rows_, cols_;
  std::vector<Fe> a_;
};

struct RrefResult {
  MatFq mat;                        // same shape, zero rows at the bottom
  std::size_t rank;
  std::vector<std::size_t> pivots;  // ascending pivot columns, one per rank row
};

RrefResult rref(const MatFq& m);

// Basis of the right kernel {x : Mx = 0}, one vector per row, rank-nullity
// many rows, in reduced echelon form.
MatFq kernel_basis(const MatFq& m);

MatFq mat_mul(const MatFq& a, const MatFq& b);
VecFq mat_vec(const MatFq& m, const VecFq& x);
MatFq transpose(const MatFq& m);
MatFq mat_inverse(const MatFq& m);  // NotFullRank when singular

// Incremental row-space builder; rows are kept fully reduced so the basis is
// the RREF of everything inserted so far.  q = 2 uses a packed 64-bit path.
class SpanBuilder {
 public:
  SpanBuilder(FieldPtr ctx, std::size_t cols);
  // Forces the packed (q = 2 only) or generic engine; the differential tests
  // run both on the same input.
  SpanBuilder(FieldPtr ctx, std::size_t cols, bool use_packed);
  // Returns true when the row enlarged the span.
  bool insert(const Fe* row);
  bool insert(const VecFq& row) { return insert(row.data()); }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  bool full() const { return rank() == cols_; }
  MatFq basis() const;  // rank x cols, canonical RREF
  void clear();

 private:
  bool insert_generic(const Fe* row);
  bool insert_packed(const Fe* row);

  FieldPtr ctx_;
  std::size_t cols_;
  bool packed_;
  std::vector<std::size_t> pivots_;       // ascending
  std::vector<VecFq> rows_;               // generic path, parallel to pivots_
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> prows_;  // packed path
  VecFq scratch_;
};

namespace detail {
// Generic-field elimination regardless of q; the public rref() dispatches to
// the packed engine for q = 2, and the two must agree bit for bit.
RrefResult rref_generic(const MatFq& m);
RrefResult rref_packed_f2(const MatFq& m);
}  // namespace detail

}  // namespace sqcodes
