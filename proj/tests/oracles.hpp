#pragma once

// Reference computations for the tests.  Each uses a different route from the
// library (plain int64 arrays, permutation expansion, brute force) so the two
// can be compared.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<std::int64_t>>;

inline Mat identity(int d) {
  Mat m(d, std::vector<std::int64_t>(d, 0));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Leibniz expansion over all permutations.
inline std::int64_t det(const Mat& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::int64_t total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    std::int64_t term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= a[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// det(lambda I - A), coefficients lowest degree first: c_{n-k} = (-1)^k * (sum of k x k principal minors).
inline std::vector<std::int64_t> char_poly(const Mat& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::int64_t> c(n + 1, 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Mat sub(idx.size(), std::vector<std::int64_t>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = a[idx[i]][idx[j]];
    const int k = static_cast<int>(idx.size());
    c[n - k] += (k % 2 ? -1 : 1) * det(sub);
  }
  return c;
}

// Inverse of a 2x2 determinant-one matrix.
inline Mat inverse2(const Mat& g) { return {{g[1][1], -g[0][1]}, {-g[1][0], g[0][0]}}; }

// Every product of at most L generators, deduplicated.
inline std::set<Mat> words_up_to(const std::vector<Mat>& gens, int L) {
  std::set<Mat> all{identity(static_cast<int>(gens.front().size()))};
  std::vector<Mat> frontier(all.begin(), all.end());
  for (int len = 1; len <= L; ++len) {
    std::vector<Mat> next;
    for (const auto& w : frontier)
      for (const auto& s : gens) next.push_back(mul(w, s));
    for (const auto& m : next) all.insert(m);
    frontier = std::move(next);
  }
  return all;
}

inline std::vector<Mat> elementary(int d) {
  std::vector<Mat> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      for (int s : {1, -1}) {
        Mat m = identity(d);
        m[i][j] = s;
        out.push_back(m);
      }
    }
  return out;
}

// Haar measure of U0 ∩ (U0 - t) for the arc U0 = (-eps, eps), by sampling.
inline double overlap_monte_carlo(const std::vector<double>& eps, const std::vector<double>& shift, std::size_t samples,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto in_arc = [](double x, double e) {
    x -= std::round(x);
    return std::abs(x) < e;
  };
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < eps.size() && ok; ++i) {
      const double x = u(rng);
      ok = in_arc(x, eps[i]) && in_arc(x + shift[i], eps[i]);
    }
    hits += ok;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

// frac(a) for a given to many digits as long double.
inline long double frac(long double x) { return x - std::floor(x); }

}  // namespace oracle
