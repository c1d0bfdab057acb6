#ifndef DEEPFRI_RATIONAL_HPP
#define DEEPFRI_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace deepfri {

// Exact rational arithmetic for distances, agreements and acceptance
// probabilities. Denominators stay small (powers of two times domain sizes),
// so 64-bit components never get close to overflow at desk scale.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline long long isqrt_floor(long long v) {
  if (v < 0) return -1;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Exact square root when the reduced numerator and denominator are both
// perfect squares; nullopt otherwise.
inline std::optional<Rational> sqrt_exact(const Rational& r) {
  if (r < 0) return std::nullopt;
  long long n = r.numerator(), d = r.denominator();
  long long sn = isqrt_floor(n), sd = isqrt_floor(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace deepfri

#endif  // DEEPFRI_RATIONAL_HPP
