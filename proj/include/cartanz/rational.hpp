#ifndef CARTANZ_RATIONAL_HPP
#define CARTANZ_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace cartanz {

namespace bmp = boost::multiprecision;

// Expression templates are disabled so that Eigen sees plain value types.
using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = DenseMatrix<Rational>;
using QVector = DenseVector<Rational>;

inline bool is_integer(const Rational& q) { return bmp::denominator(q) == 1; }

/// Converts q to an Integer; throws std::domain_error when q is not integral.
Integer to_integer(const Rational& q);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p" or "p/q".
Rational parse_rational(const std::string& s);

Integer factorial(unsigned k);

/// Converts a small integral rational into a machine integer; throws if it
/// does not fit or is not integral.
std::int64_t to_int64(const Rational& q);

}  // namespace cartanz

#endif
