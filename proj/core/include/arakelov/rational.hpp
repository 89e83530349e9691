#pragma once

#include <gmpxx.h>

#include <string>

#include "arakelov/errors.hpp"

// Exact rational scalars and p-adic valuations.
//
// Rationals are GMP mpq_class values, which stay canonical (reduced, positive
// denominator) under arithmetic. The valuation v_p is the extended integer
// v_p(a/b) = ord_p(a) - ord_p(b), with v_p(0) = +infinity represented
// explicitly so that the rules v(xy) = v(x)+v(y) and
// v(x+y) >= min(v(x),v(y)) stay total.

namespace arakelov {

using Rational = mpq_class;

// Strict "a/b" or "a" parser (optional sign, decimal digits, nonzero b).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& x);

// Fixes the finite place: the prime p, verified prime at construction.
class ValuationContext {
 public:
  explicit ValuationContext(const mpz_class& prime);
  explicit ValuationContext(long prime) : ValuationContext(mpz_class(prime)) {}

  const mpz_class& prime() const { return prime_; }
  // p as an exact power p^k, k possibly negative.
  Rational prime_power(long k) const;

  friend bool operator==(const ValuationContext& a, const ValuationContext& b) {
    return a.prime_ == b.prime_;
  }

 private:
  mpz_class prime_;
};

// Element of Z union {+infinity}.
class Valuation {
 public:
  Valuation(long v) : finite_(true), v_(v) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !finite_; }
  // Defined only for finite values.
  long value() const {
    if (!finite_) throw Error("valuation: +infinity has no integer value");
    return v_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
  }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.finite_ && b.finite_) return a.v_ < b.v_;
    return a.finite_ && !b.finite_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) {
    return a < b || a == b;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Valuation(a.v_ + b.v_);
  }
  static Valuation min(const Valuation& a, const Valuation& b) {
    return a < b ? a : b;
  }

 private:
  Valuation() : finite_(false), v_(0) {}
  bool finite_;
  long v_;
};

Valuation valuation(const Rational& x, const ValuationContext& ctx);

// Shorthand for valuation(x).value(); throws on x = 0.
long finite_valuation(const Rational& x, const ValuationContext& ctx);

// Canonical representative of the coset x + p^a Z_(p) inside Q. For
// x in Z_(p) and a >= 0 this is the usual integer residue in [0, p^a).
Rational residue_mod_p_power(const Rational& x, long a,
                             const ValuationContext& ctx);

}  // namespace arakelov
