#pragma once

// Points of A_d = Mat_d^0(R)/Mat_d^0(Z) ~ T^{d^2-1}, represented exactly as
// residues r / Q for a large prime Q, and the dual SL_d(Z) action
// <g.x, h> = <x, Ad(g) h>, i.e. residues -> Ad(g)^T residues (mod Q).

#include "bohrwalk/intmat.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bohrwalk {

/// 2^61 - 1.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t s = a + b;  // a, b < q < 2^63
  return s >= q ? s - q : s;
}
inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t q) { return a == 0 ? 0 : q - a; }

bool is_prime(std::uint64_t q);

class TorusPoint {
 public:
  TorusPoint(int d, std::uint64_t modulus, std::vector<std::uint64_t> residues);

  static TorusPoint zero(int d, std::uint64_t modulus = kMersenne61);

  int dim() const { return d_; }
  std::uint64_t modulus() const { return q_; }
  const std::vector<std::uint64_t>& residues() const { return r_; }
  bool is_zero() const;

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
  friend auto operator<=>(const TorusPoint&, const TorusPoint&) = default;

 private:
  int d_;
  std::uint64_t q_;
  std::vector<std::uint64_t> r_;
};

/// The transpose of Ad(g) reduced mod Q, ready to act on residue vectors.
class TorusAction {
 public:
  TorusAction(const Adjoint& ad, std::uint64_t modulus);
  TorusAction(const Unimodular& g, std::uint64_t modulus) : TorusAction(adjoint_matrix(g), modulus) {}

  int dim() const { return d_; }
  std::uint64_t modulus() const { return q_; }

  /// out = M * in (mod Q); in and out must not alias.
  void apply(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) const;
  TorusPoint apply(const TorusPoint& x) const;

 private:
  int d_;
  int n_;
  std::uint64_t q_;
  std::vector<std::uint64_t> m_;  // n x n, row-major
};

TorusPoint act(const Unimodular& g, const TorusPoint& x);
TorusPoint act(const Adjoint& ad, const TorusPoint& x);

/// exp(2 pi i phase / Q) kept as the exact phase index.
struct CharacterValue {
  std::uint64_t phase = 0;
  std::uint64_t modulus = 1;

  std::complex<double> value() const;
};

/// Phase sum_i r_i h_i mod Q.
std::uint64_t phase_index(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> h_mod,
                          std::uint64_t modulus);
std::vector<std::uint64_t> reduce_frequency(const Coords& h, std::uint64_t modulus);

CharacterValue character(const TorusPoint& x, const Coords& h);

/// Uniform residues from a seeded generator, never the zero point.
TorusPoint random_point(int d, std::uint64_t modulus, std::uint64_t seed);

/// exp(2 pi i k / q) for an exact phase index, evaluated after centring k.
std::complex<double> unit_phase(std::uint64_t k, std::uint64_t q);

}  // namespace bohrwalk
