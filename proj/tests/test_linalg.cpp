#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "sqcodes/errors.hpp"
#include "sqcodes/linalg.hpp"
#include "sqcodes/rng.hpp"

using namespace sqcodes;

namespace {

MatFq random_matrix(const FieldPtr& ctx, std::size_t r, std::size_t c,
                    Rng& rng) {
  MatFq m(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Fe(rng.below(ctx->q()));
  return m;
}

bool is_rref(const MatFq& m, std::size_t rank,
             const std::vector<std::size_t>& pivots) {
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t p = pivots[i];
    if (i > 0 && p <= pivots[i - 1]) return false;
    for (std::size_t j = 0; j < p; ++j)
      if (m.at(i, j) != 0) return false;
    if (m.at(i, p) != 1) return false;
    for (std::size_t r2 = 0; r2 < rank; ++r2)
      if (r2 != i && m.at(r2, p) != 0) return false;
  }
  for (std::size_t i = rank; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

// every row of `a` lies in the row space of `b` and vice versa
bool same_row_space(const MatFq& a, const MatFq& b) {
  SpanBuilder sa(a.ctx(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) sa.insert(a.row_ptr(i));
  std::size_t ra = sa.rank();
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (sa.insert(b.row_ptr(i))) return false;
  SpanBuilder sb(b.ctx(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) sb.insert(b.row_ptr(i));
  return sb.rank() == ra;
}

const std::uint32_t kQs[] = {2, 3, 4, 5, 9, 16};

}  // namespace

TEST_CASE("hand-checked reduction over F_2 and F_5") {
  auto f2 = FieldCtx::make(2);
  MatFq m = MatFq::from_rows(f2, 3, {{1, 1, 0}, {1, 0, 1}});
  RrefResult r = rref(m);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK(r.mat == MatFq::from_rows(f2, 3, {{1, 0, 1}, {0, 1, 1}}));

  auto f5 = FieldCtx::make(5);
  MatFq m5 = MatFq::from_rows(f5, 3, {{2, 4, 1}, {3, 1, 2}, {0, 3, 4}});
  RrefResult r5 = rref(m5);
  CHECK(r5.rank == 3);  // det = -43 = 2 mod 5
  CHECK(r5.mat == MatFq::identity(f5, 3));

  MatFq dep = MatFq::from_rows(f5, 2, {{1, 2}, {2, 4}});
  CHECK(rref(dep).rank == 1);
}

TEST_CASE("kernel anchors") {
  auto f2 = FieldCtx::make(2);
  // x1 + x2 + x3 = 0 has kernel dim 2
  MatFq m = MatFq::from_rows(f2, 3, {{1, 1, 1}});
  MatFq ker = kernel_basis(m);
  CHECK(ker.rows() == 2);
  CHECK(ker == MatFq::from_rows(f2, 3, {{1, 0, 1}, {0, 1, 1}}));  // rref basis
  auto f3 = FieldCtx::make(3);
  MatFq m3 = MatFq::from_rows(f3, 2, {{1, 2}});
  MatFq k3 = kernel_basis(m3);
  CHECK(k3.rows() == 1);
  CHECK(k3 == MatFq::from_rows(f3, 2, {{1, 1}}));  // 1 + 2*1 = 0 mod 3
}

TEST_CASE("rank-nullity and kernel correctness on random matrices") {
  for (std::uint32_t q : kQs) {
    auto ctx = FieldCtx::make(q);
    Rng rng(40 + q);
    for (int t = 0; t < 250; ++t) {
      std::size_t r = rng.below(7), c = rng.below(7);
      MatFq m = random_matrix(ctx, r, c, rng);
      RrefResult red = rref(m);
      MatFq ker = kernel_basis(m);
      CHECK(red.rank + ker.rows() == c);
      CHECK(is_rref(red.mat, red.rank, red.pivots));
      // every kernel row is annihilated by every matrix row
      for (std::size_t ki = 0; ki < ker.rows(); ++ki)
        for (std::size_t mi = 0; mi < r; ++mi) {
          Fe acc = 0;
          for (std::size_t j = 0; j < c; ++j)
            acc = ctx->add(acc, ctx->mul(m.at(mi, j), ker.at(ki, j)));
          CHECK(acc == 0);
        }
      // reduction preserves the row space and is idempotent
      CHECK(same_row_space(m, red.mat));
      RrefResult again = rref(red.mat);
      CHECK(again.mat == red.mat);
      CHECK(again.rank == red.rank);
      // row rank equals column rank
      CHECK(rref(transpose(m)).rank == red.rank);
    }
  }
}

TEST_CASE("degenerate shapes") {
  auto ctx = FieldCtx::make(3);
  MatFq zero_rows(ctx, 0, 4);
  CHECK(rref(zero_rows).rank == 0);
  CHECK(kernel_basis(zero_rows).rows() == 4);  // kernel is everything
  MatFq zero_cols(ctx, 3, 0);
  CHECK(rref(zero_cols).rank == 0);
  CHECK(kernel_basis(zero_cols).rows() == 0);
  MatFq a(ctx, 0, 3), b(ctx, 3, 5);
  CHECK(mat_mul(a, b).rows() == 0);
  CHECK(mat_mul(a, b).cols() == 5);
}

TEST_CASE("matrix product against direct convolution") {
  for (std::uint32_t q : {2u, 5u, 8u}) {
    auto ctx = FieldCtx::make(q);
    Rng rng(7 * q);
    for (int t = 0; t < 100; ++t) {
      std::size_t a = 1 + rng.below(5), b = 1 + rng.below(5),
                  c = 1 + rng.below(5);
      MatFq x = random_matrix(ctx, a, b, rng);
      MatFq y = random_matrix(ctx, b, c, rng);
      MatFq xy = mat_mul(x, y);
      REQUIRE(xy.rows() == a);
      REQUIRE(xy.cols() == c);
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          Fe acc = 0;
          for (std::size_t l = 0; l < b; ++l)
            acc = ctx->add(acc, ctx->mul(x.at(i, l), y.at(l, j)));
          CHECK(xy.at(i, j) == acc);
        }
      // (xy)^T = y^T x^T
      CHECK(transpose(xy) == mat_mul(transpose(y), transpose(x)));
      CHECK(transpose(transpose(x)) == x);
      VecFq v(b);
      for (auto& e : v) e = Fe(rng.below(q));
      VecFq xv = mat_vec(x, v);
      REQUIRE(xv.size() == a);
      for (std::size_t i = 0; i < a; ++i) {
        Fe acc = 0;
        for (std::size_t l = 0; l < b; ++l)
          acc = ctx->add(acc, ctx->mul(x.at(i, l), v[l]));
        CHECK(xv[i] == acc);
      }
    }
  }
}

TEST_CASE("inverse on random invertible matrices") {
  for (std::uint32_t q : {2u, 3u, 9u}) {
    auto ctx = FieldCtx::make(q);
    Rng rng(90 + q);
    int done = 0;
    while (done < 60) {
      std::size_t k = 1 + rng.below(6);
      MatFq m = random_matrix(ctx, k, k, rng);
      if (rref(m).rank < k) continue;
      ++done;
      MatFq inv = mat_inverse(m);
      CHECK(mat_mul(m, inv) == MatFq::identity(ctx, k));
      CHECK(mat_mul(inv, m) == MatFq::identity(ctx, k));
    }
  }
  auto ctx = FieldCtx::make(2);
  CHECK_THROWS_AS(mat_inverse(MatFq::from_rows(ctx, 2, {{1, 1}, {1, 1}})),
                  NotFullRank);
  CHECK_THROWS_AS(mat_inverse(MatFq(ctx, 2, 3)), DimensionMismatch);
}

TEST_CASE("from_rows validates entries") {
  auto ctx = FieldCtx::make(3);
  CHECK_THROWS_AS(MatFq::from_rows(ctx, 2, {{0, 3}}), FieldError);
  CHECK_THROWS_AS(MatFq::from_rows(ctx, 2, {{0, 1, 2}}), DimensionMismatch);
}

TEST_CASE("span builder tracks rank incrementally and canonically") {
  for (std::uint32_t q : kQs) {
    auto ctx = FieldCtx::make(q);
    Rng rng(55 + q);
    for (int t = 0; t < 60; ++t) {
      std::size_t c = 1 + rng.below(8);
      std::size_t nrows = rng.below(12);
      MatFq m(ctx, nrows, c);
      SpanBuilder sb(ctx, c);
      for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Fe(rng.below(q));
        std::size_t before = sb.rank();
        bool grew = sb.insert(m.row_ptr(i));
        CHECK(sb.rank() == before + (grew ? 1 : 0));
        // the builder's basis must equal the rref of the rows so far
        MatFq sofar(ctx, i + 1, c);
        for (std::size_t r2 = 0; r2 <= i; ++r2) sofar.set_row(r2, m.row(r2));
        RrefResult red = rref(sofar);
        CHECK(sb.rank() == red.rank);
        MatFq basis = sb.basis();
        REQUIRE(basis.rows() == red.rank);
        for (std::size_t r2 = 0; r2 < red.rank; ++r2)
          CHECK(basis.row(r2) == red.mat.row(r2));
      }
      CHECK(sb.full() == (sb.rank() == c));
    }
  }
}

TEST_CASE("packed and generic builders agree over F_2") {
  auto ctx = FieldCtx::make(2);
  Rng rng(2024);
  for (int t = 0; t < 80; ++t) {
    std::size_t c = 1 + rng.below(130);  // crosses the 64-bit word boundary
    SpanBuilder packed(ctx, c, true);
    SpanBuilder generic(ctx, c, false);
    for (int i = 0; i < 40; ++i) {
      VecFq row(c);
      for (auto& e : row) e = Fe(rng.below(2));
      bool gp = packed.insert(row);
      bool gg = generic.insert(row);
      CHECK(gp == gg);
      CHECK(packed.rank() == generic.rank());
    }
    CHECK(packed.basis() == generic.basis());
    CHECK(packed.full() == generic.full());
  }
}
