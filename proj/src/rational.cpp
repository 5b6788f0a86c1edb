#include "cartanz/rational.hpp"

#include <limits>
#include <stdexcept>

namespace cartanz {

Integer to_integer(const Rational& q) {
  if (!is_integer(q)) {
    throw std::domain_error("non-integral value " + to_string(q));
  }
  return Integer(bmp::numerator(q));
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const Integer& z) { return z.str(); }

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash))) / Rational(Integer(s.substr(slash + 1)));
}

Integer factorial(unsigned k) {
  Integer r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

std::int64_t to_int64(const Rational& q) {
  Integer z = to_integer(q);
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer out of range: " + z.str());
  }
  return z.convert_to<std::int64_t>();
}

}  // namespace cartanz
