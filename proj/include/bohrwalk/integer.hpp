#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace bohrwalk {

// Expression templates are switched off so the numbers compose cleanly with Eigen's own.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

inline bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

/// Reduction into [0, modulus).
inline std::uint64_t mod_reduce(const BigInt& v, std::uint64_t modulus) {
  BigInt r = v % BigInt(modulus);
  if (r < 0) r += BigInt(modulus);
  return r.convert_to<std::uint64_t>();
}

/// Exact value of "12", "-3/4", "0.05", "1e-3" or "2.5e2".
Rational parse_rational(std::string_view text);
/// Decimal integer; throws std::invalid_argument otherwise.
BigInt parse_integer(std::string_view text);

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_value(const BigInt& v) {
  if (fits_int64(v)) return std::hash<std::int64_t>{}(v.convert_to<std::int64_t>());
  return std::hash<std::string>{}(v.str());
}

inline std::size_t hash_value(std::int64_t v) { return std::hash<std::int64_t>{}(v); }

}  // namespace bohrwalk
