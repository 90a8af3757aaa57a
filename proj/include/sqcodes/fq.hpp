#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sqcodes/errors.hpp"

namespace sqcodes {

// Field element, encoded as base-p digits of the representing polynomial,
// least significant digit = constant term.  For p = 2 this is the usual bit
// pattern; for prime fields it is the residue itself.
using Fe = std::uint16_t;

// Immutable arithmetic context for F_q, q = p^e <= 2^16.  Multiplication and
// inversion go through exp/log tables w.r.t. a fixed generator of F_q^*;
// addition is digitwise mod p (XOR when p = 2).
class FieldCtx {
 public:
  // Shared, cached per q.  Throws NotPrimePower / OutOfRange.
  static std::shared_ptr<const FieldCtx> make(std::uint32_t q);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }

  // Monic irreducible modulus, e+1 coefficients, constant term first.
  // Chosen as the lexicographically smallest irreducible candidate in that
  // coefficient order, so every context of a given q is identical.
  const std::vector<Fe>& modulus() const { return modulus_; }

  Fe add(Fe a, Fe b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) {
      std::uint32_t s = std::uint32_t(a) + b;
      return Fe(s >= p_ ? s - p_ : s);
    }
    return add_slow(a, b);
  }

  Fe neg(Fe a) const {
    if (p_ == 2) return a;
    if (e_ == 1) return Fe(a == 0 ? 0 : p_ - a);
    return neg_slow(a);
  }

  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

  Fe mul(Fe a, Fe b) const {
    if (q_ == 2) return a & b;
    if (a == 0 || b == 0) return 0;
    return exp_[std::uint32_t(log_[a]) + log_[b]];
  }

  Fe inv(Fe a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (q_ == 2) return 1;
    return exp_[q_ - 1 - log_[a]];
  }

  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  Fe pow(Fe a, std::uint64_t n) const;

  Fe frobenius(Fe a) const { return pow(a, p_); }

  // x -> x^(1/p); bijective since finite fields are perfect.
  Fe inv_frobenius(Fe a) const;

  // In odd characteristic: true iff a is a square (log parity; 0 counts).
  // In characteristic 2 every element is a square.
  bool is_square(Fe a) const;

  // Square root when one exists; DomainError for odd-char non-squares.
  Fe sqrt(Fe a) const;

  Fe check(std::uint32_t v) const {
    if (v >= q_) throw FieldError("element value out of range for F_q");
    return Fe(v);
  }

 private:
  FieldCtx() = default;
  void build(std::uint32_t q);
  Fe add_slow(Fe a, Fe b) const;
  Fe neg_slow(Fe a) const;

  std::uint32_t p_ = 0, e_ = 0, q_ = 0;
  std::vector<Fe> modulus_;
  std::vector<Fe> exp_;  // length 2(q-1), doubled so mul needs no reduction
  std::vector<Fe> log_;  // log_[0] unused
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

inline void require_same_field(const FieldCtx& a, const FieldCtx& b) {
  if (a.q() != b.q()) throw FieldMismatch("operands live in different fields");
}

}  // namespace sqcodes
