#pragma once

#include "bohrwalk/intmat.hpp"
#include "oracles.hpp"

#include <initializer_list>
#include <random>

namespace testing {

using namespace bohrwalk;

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = BigInt(v);
    ++i;
  }
  return m;
}

inline oracle::Mat to_oracle(const IntMatrix& m) {
  oracle::Mat out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).convert_to<std::int64_t>();
  return out;
}

inline IntMatrix from_oracle(const oracle::Mat& m) {
  IntMatrix out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = BigInt(m[i][j]);
  return out;
}

inline std::vector<std::int64_t> coeffs(const IntPolynomial& p) {
  std::vector<std::int64_t> out;
  for (const auto& c : p.coefficients()) out.push_back(c.convert_to<std::int64_t>());
  return out;
}

// Product of `steps` random elementary generators.
inline Unimodular random_word(int d, int steps, std::mt19937_64& rng) {
  const auto gens = elementary_generators<BigInt>(d);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Unimodular g = Unimodular::identity(d);
  for (int s = 0; s < steps; ++s) g = g * gens[pick(rng)];
  return g;
}

inline Traceless random_traceless(int d, long bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> e(-bound, bound);
  IntMatrix m(d, d);
  BigInt tr = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      m(i, j) = BigInt(e(rng));
      if (i == j && i + 1 < d) tr += m(i, j);
    }
  m(d - 1, d - 1) = -tr;
  return Traceless(m);
}

}  // namespace testing
