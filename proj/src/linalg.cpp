#include "cartanz/linalg.hpp"

namespace cartanz::linalg {

QVector primitive_integer(const QVector& v) {
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    den_lcm = bmp::lcm(den_lcm, Integer(bmp::denominator(v(i))));
  }
  QVector w = v * Rational(den_lcm);
  Rational lead = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) == 0) continue;
    if (lead == 0) lead = w(i);
    num_gcd = bmp::gcd(num_gcd, Integer(bmp::numerator(w(i))));
  }
  if (num_gcd == 0) return w;
  Rational scale = Rational(1) / Rational(num_gcd);
  if (lead < 0) scale = -scale;
  return w * scale;
}

}  // namespace cartanz::linalg
