#include "arakelov/rational.hpp"

#include <cctype>

namespace arakelov {

Rational parse_rational(const std::string& text) {
  // mpq_set_str accepts some forms we do not want (whitespace, hex); be strict.
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string body = text;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body = body.substr(1);
  auto slash = body.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = digits(body);
  } else {
    ok = digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  }
  if (!ok) throw Error("parse_rational: malformed rational '" + text + "'");

  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw Error("parse_rational: malformed rational '" + text + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw Error("parse_rational: zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& x) { return x.get_str(); }

ValuationContext::ValuationContext(const mpz_class& prime) : prime_(prime) {
  if (prime_ < 2 || mpz_probab_prime_p(prime_.get_mpz_t(), 40) == 0)
    throw NotPrime("ValuationContext: " + prime_.get_str() + " is not prime");
}

Rational ValuationContext::prime_power(long k) const {
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), prime_.get_mpz_t(),
             static_cast<unsigned long>(k < 0 ? -k : k));
  Rational r(pk);
  if (k < 0) r = 1 / r;
  return r;
}

Valuation valuation(const Rational& x, const ValuationContext& ctx) {
  if (x == 0) return Valuation::infinity();
  mpz_class stripped;
  long vn = static_cast<long>(mpz_remove(stripped.get_mpz_t(),
                                         x.get_num().get_mpz_t(),
                                         ctx.prime().get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(stripped.get_mpz_t(),
                                         x.get_den().get_mpz_t(),
                                         ctx.prime().get_mpz_t()));
  return Valuation(vn - vd);
}

long finite_valuation(const Rational& x, const ValuationContext& ctx) {
  return valuation(x, ctx).value();
}

Rational residue_mod_p_power(const Rational& x, long a,
                             const ValuationContext& ctx) {
  if (x == 0) return 0;
  long v = finite_valuation(x, ctx);
  if (v >= a) return 0;
  // Shift so the unit part is a genuine element of Z_(p), reduce its residue
  // mod p^(a-s) to the canonical integer representative, shift back.
  long s = v < 0 ? v : 0;
  Rational shifted = x / ctx.prime_power(s);
  long m = a - s;
  mpz_class pm;
  mpz_pow_ui(pm.get_mpz_t(), ctx.prime().get_mpz_t(),
             static_cast<unsigned long>(m));
  mpz_class den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), shifted.get_den().get_mpz_t(),
                 pm.get_mpz_t()) == 0)
    throw Error("residue_mod_p_power: denominator not invertible mod p^a");
  mpz_class r = (shifted.get_num() * den_inv) % pm;
  if (r < 0) r += pm;
  return Rational(r) * ctx.prime_power(s);
}

}  // namespace arakelov
