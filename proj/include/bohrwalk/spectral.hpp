#pragma once

// Rotation system (T^n, Haar, x -> x + tau(h)) attached to a Bohr-zero set
// with window U0, and the averages that probe its spectral measure:
// autocorrelations eta(U0 ∩ (U0 - tau(h))), Følner averages over centred
// boxes, character-twisted averages that isolate single atoms, and plain
// character averages.

#include "bohrwalk/bohr.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <cstdint>
#include <vector>

namespace bohrwalk {

class RotationSystem {
 public:
  /// Window must be zero-centred with radii <= 1/8.
  explicit RotationSystem(BohrSpec spec);
  /// The system of the halved window of a Bohr-zero set.
  static RotationSystem of_bohr_set(const BohrSpec& spec) { return RotationSystem(zero_symmetric_sub(spec)); }

  const BohrSpec& spec() const { return spec_; }
  int rank() const { return spec_.rank(); }
  /// Haar measure of U0.
  double volume() const;

 private:
  BohrSpec spec_;
};

/// Closed form prod_i max(0, 2 eps_i - ||tau_i(h)||).
double autocorr(const RotationSystem& system, const IntVector& h);

/// (1/|F_k|) sum_{|h|_inf <= k} autocorr(q h).
double folner_average(const RotationSystem& system, std::int64_t k, std::int64_t q = 1, int workers = 1);

/// x0 = numerators / denom on T^rank.
struct RationalPoint {
  std::vector<BigInt> numerators;
  BigInt denom{1};

  static RationalPoint parse(std::string_view text);  // "1/2" or "1/3,2/3,0"
  std::string str() const;
};

struct AtomEstimate {
  std::complex<double> value;
  double modulus = 0.0;
};

/// (1/|F_k|) sum_{|h|_inf <= k} autocorr(h) exp(-2 pi i <x0, h>).
AtomEstimate atom_mass(const RotationSystem& system, const RationalPoint& x0, std::int64_t k, int workers = 1);

/// (1/k^r) sum_{g in [0, k)^r} exp(2 pi i <theta, g>); throws for the trivial character.
std::complex<double> character_average(const std::vector<Frequency>& theta, std::int64_t k);

/// Smallest eigenvalue of [autocorr(h_i - h_j)]_{ij}.
double min_gram_eigenvalue(const RotationSystem& system, const std::vector<IntVector>& points);

}  // namespace bohrwalk
