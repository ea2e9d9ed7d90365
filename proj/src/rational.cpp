#include "toric/rational.hpp"

#include <numeric>

#include "toric/errors.hpp"

namespace toric {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class num(text, 10);
      return Rational(num);
    }
    mpz_class num(text.substr(0, slash), 10);
    mpz_class den(text.substr(slash + 1), 10);
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("cannot parse rational '" + text +
                     "' (expected decimal-free p or p/q)");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational rat_pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  Rational acc = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) out *= acc;
    acc *= acc;
    e >>= 1u;
  }
  return out;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

long long vector_gcd(const std::vector<long long>& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace toric
