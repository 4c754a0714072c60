#pragma once

// Finite-support measures on SL_d(Z), their exact convolution powers and
// pushforwards to the torus, Monte Carlo sampling of mu^{*k} * nu, and
// Fourier-coefficient (Weyl sum) diagnostics of the resulting clouds.

#include "bohrwalk/torus.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bohrwalk {

inline constexpr std::size_t kDefaultSupportCap = 100000;

struct GroupAtom {
  Unimodular g;
  Rational p;
};

class FiniteSupportMeasure {
 public:
  /// Probabilities must be positive and sum to exactly 1; matrices pairwise distinct.
  explicit FiniteSupportMeasure(std::vector<GroupAtom> atoms);

  static FiniteSupportMeasure dirac(Unimodular g);
  static FiniteSupportMeasure uniform(std::vector<Unimodular> support);

  int dim() const { return atoms_.front().g.dim(); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<GroupAtom>& atoms() const { return atoms_; }
  Rational mass_of(const Unimodular& g) const;
  Rational total_mass() const;

 private:
  std::vector<GroupAtom> atoms_;
};

FiniteSupportMeasure convolve_group(const FiniteSupportMeasure& a, const FiniteSupportMeasure& b,
                                    std::size_t cap = kDefaultSupportCap);
/// mu^{*k}; k = 0 gives the Dirac mass at the identity.
FiniteSupportMeasure convolution_power(const FiniteSupportMeasure& mu, int k,
                                       std::size_t cap = kDefaultSupportCap);

struct TorusAtom {
  TorusPoint x;
  Rational w;
};

class AtomicTorusMeasure {
 public:
  /// Atoms at equal points are merged; weights must be positive and sum to 1.
  explicit AtomicTorusMeasure(std::vector<TorusAtom> atoms);

  static AtomicTorusMeasure dirac(TorusPoint x);

  int dim() const { return atoms_.front().x.dim(); }
  std::uint64_t modulus() const { return atoms_.front().x.modulus(); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<TorusAtom>& atoms() const { return atoms_; }
  Rational total_mass() const;

  /// nu-hat(h) = sum_x nu(x) exp(2 pi i <x, h>).
  std::complex<double> fourier(const Coords& h) const;

 private:
  std::vector<TorusAtom> atoms_;
};

/// sum_g sum_x mu(g) nu(x) delta_{g.x}, exact.
AtomicTorusMeasure pushforward_exact(const FiniteSupportMeasure& mu, const AtomicTorusMeasure& nu,
                                     std::size_t cap = kDefaultSupportCap);

struct CloudMeta {
  int k = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// N torus points stored contiguously.
class EmpiricalCloud {
 public:
  EmpiricalCloud(int d, std::uint64_t modulus, CloudMeta meta, std::vector<std::uint64_t> data);

  int dim() const { return d_; }
  int coords() const { return n_; }
  std::uint64_t modulus() const { return q_; }
  std::size_t size() const { return meta_.samples; }
  const CloudMeta& meta() const { return meta_; }
  std::span<const std::uint64_t> point(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  const std::vector<std::uint64_t>& data() const { return data_; }

 private:
  int d_;
  int n_;
  std::uint64_t q_;
  CloudMeta meta_;
  std::vector<std::uint64_t> data_;
};

/// Per-sample generator seed; samples are independent of how they are sharded.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

EmpiricalCloud sample_walk(const FiniteSupportMeasure& mu, int k, const AtomicTorusMeasure& start,
                           std::size_t samples, std::uint64_t seed, int workers = 1);

/// The same sample paths observed after each of the (increasing) step counts in ks.
/// The cloud for ks[i] equals sample_walk(mu, ks[i], start, samples, seed).
std::vector<EmpiricalCloud> sample_walk_checkpoints(const FiniteSupportMeasure& mu, std::vector<int> ks,
                                                    const AtomicTorusMeasure& start, std::size_t samples,
                                                    std::uint64_t seed, int workers = 1);

/// All h with 0 < |h|_inf <= H, lexicographic in the coordinates.
std::vector<Coords> frequency_ball(int d, int H);

struct WeylReport {
  int H = 0;
  std::vector<Coords> frequencies;
  std::vector<std::complex<double>> coefficients;  // (1/N) sum_points exp(2 pi i <x, h>)
  double max_modulus = 0.0;
  std::size_t argmax = 0;
};

WeylReport weyl_report(const EmpiricalCloud& cloud, int H, int workers = 1);

struct FourierCheck {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double error = 0.0;
};

/// lhs: Fourier coefficient at h of pushforward_exact(mu^{*k}, nu).
/// rhs: sum_g nu-hat(g^{-1} h g) mu^{*k}(g).
FourierCheck fourier_convolution_check(const FiniteSupportMeasure& mu, const AtomicTorusMeasure& nu,
                                       const Coords& h, int k, std::size_t cap = kDefaultSupportCap);

}  // namespace bohrwalk
