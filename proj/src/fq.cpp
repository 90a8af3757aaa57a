#include "sqcodes/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace sqcodes {
namespace {

// Dense polynomials over F_p, coefficient vector with constant term first.
// Only used at context-build time; element arithmetic afterwards is table
// driven.
using Poly = std::vector<std::uint32_t>;

std::size_t poly_deg(const Poly& a) {
  std::size_t d = a.size();
  while (d > 0 && a[d - 1] == 0) --d;
  return d == 0 ? 0 : d - 1;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

// In-place remainder of a by monic m.
void poly_mod(Poly& a, const Poly& m, std::uint32_t p) {
  std::size_t dm = poly_deg(m);
  while (!poly_is_zero(a) && poly_deg(a) >= dm) {
    std::size_t da = poly_deg(a);
    std::uint32_t c = a[da];
    std::size_t shift = da - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + c * (p - m[i] % p)) % p;
  }
  a.resize(std::max<std::size_t>(dm, 1));
}

Fe poly_encode(const Poly& a, std::uint32_t p) {
  std::uint32_t v = 0, pw = 1;
  for (std::size_t i = 0; i < a.size(); ++i, pw *= p) v += a[i] % p * pw;
  return Fe(v);
}

Poly poly_decode(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
  Poly a(e, 0);
  for (std::uint32_t i = 0; i < e; ++i, v /= p) a[i] = v % p;
  return a;
}

bool is_irreducible(const Poly& cand, std::uint32_t p, std::uint32_t e) {
  // Trial division by every monic polynomial of degree 1..e/2 suffices:
  // a reducible degree-e polynomial has a monic factor of degree <= e/2.
  for (std::uint32_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly div = poly_decode(std::uint32_t(v), p, d);
      div.resize(d + 1);
      div[d] = 1;
      Poly rem = cand;
      poly_mod(rem, div, p);
      if (poly_is_zero(rem)) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

void FieldCtx::build(std::uint32_t q) {
  if (q < 2 || q > 65536) throw OutOfRange("q must satisfy 2 <= q <= 2^16");
  std::uint32_t p = 2;
  while (q % p != 0) {
    ++p;
    if (std::uint64_t(p) * p > q) {
      p = q;
      break;
    }
  }
  std::uint32_t e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw NotPrimePower("q is not a prime power");
  p_ = p;
  e_ = e;
  q_ = q;

  if (e == 1) {
    modulus_ = {0, 1};  // X; unused for prime fields
  } else {
    // Scan candidates in lexicographic coefficient order (c_0, ..., c_{e-1})
    // and keep the first irreducible one.
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < e; ++i) total *= p;
    bool found = false;
    for (std::uint64_t v = 0; v < total && !found; ++v) {
      Poly cand(e + 1, 0);
      std::uint64_t t = v;
      for (std::uint32_t i = 0; i < e; ++i) {  // most significant digit = c_0
        cand[e - 1 - i] = std::uint32_t(t % p);
        t /= p;
      }
      cand[e] = 1;
      if (is_irreducible(cand, p, e)) {
        modulus_.assign(cand.begin(), cand.end());
        found = true;
      }
    }
    if (!found) throw NotPrimePower("no irreducible modulus found");  // unreachable
  }

  if (q == 2) return;

  Poly mod(modulus_.begin(), modulus_.end());
  auto slow_mul = [&](Fe a, Fe b) {
    Poly r = poly_mul(poly_decode(a, p, e), poly_decode(b, p, e), p);
    poly_mod(r, mod, p);
    return poly_encode(r, p);
  };
  auto slow_pow = [&](Fe a, std::uint32_t n) {
    Fe r = 1, base = a;
    while (n) {
      if (n & 1) r = slow_mul(r, base);
      base = slow_mul(base, base);
      n >>= 1;
    }
    return r;
  };

  std::vector<std::uint32_t> fs = prime_factors(q - 1);
  Fe gen = 0;
  for (std::uint32_t g = 2; g < q; ++g) {
    bool ok = true;
    for (std::uint32_t f : fs)
      if (slow_pow(Fe(g), (q - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      gen = Fe(g);
      break;
    }
  }
  if (gen == 0) throw NotPrimePower("no multiplicative generator found");  // unreachable

  exp_.resize(2 * (q - 1));
  log_.assign(q, 0);
  Fe cur = 1;
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    exp_[i] = cur;
    exp_[i + (q - 1)] = cur;
    log_[cur] = Fe(i);
    cur = slow_mul(cur, gen);
  }
}

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const FieldCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->build(q);
  cache.emplace(q, ctx);
  return ctx;
}

Fe FieldCtx::add_slow(Fe a, Fe b) const {
  std::uint32_t r = 0, pw = 1, x = a, y = b;
  for (std::uint32_t i = 0; i < e_; ++i, pw *= p_, x /= p_, y /= p_)
    r += (x % p_ + y % p_) % p_ * pw;
  return Fe(r);
}

Fe FieldCtx::neg_slow(Fe a) const {
  std::uint32_t r = 0, pw = 1, x = a;
  for (std::uint32_t i = 0; i < e_; ++i, pw *= p_, x /= p_) {
    std::uint32_t d = x % p_;
    r += (d == 0 ? 0 : p_ - d) * pw;
  }
  return Fe(r);
}

Fe FieldCtx::pow(Fe a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  if (q_ == 2) return a;
  std::uint64_t r = n % (q_ - 1);
  return exp_[std::uint64_t(log_[a]) * r % (q_ - 1)];
}

Fe FieldCtx::inv_frobenius(Fe a) const {
  // x^(p^(e-1)) inverts x -> x^p on F_{p^e}.
  Fe r = a;
  for (std::uint32_t i = 0; i + 1 < e_; ++i) r = frobenius(r);
  return e_ == 1 ? a : r;
}

bool FieldCtx::is_square(Fe a) const {
  if (a == 0 || p_ == 2) return true;
  return log_[a] % 2 == 0;
}

Fe FieldCtx::sqrt(Fe a) const {
  if (a == 0) return 0;
  if (p_ == 2) return pow(a, q_ / 2);
  if (log_[a] % 2 != 0) throw DomainError("element is not a square");
  return exp_[log_[a] / 2];
}

}  // namespace sqcodes
