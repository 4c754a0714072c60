#include "bohrwalk/torus.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bohrwalk {

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  return boost::multiprecision::miller_rabin_test(BigInt(q), 32);
}

TorusPoint::TorusPoint(int d, std::uint64_t modulus, std::vector<std::uint64_t> residues)
    : d_(d), q_(modulus), r_(std::move(residues)) {
  if (d < 2) throw std::invalid_argument("TorusPoint: d must be at least 2");
  if (modulus < 2 || modulus >= (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("TorusPoint: modulus must lie in [2, 2^62)");
  }
  if (r_.size() != static_cast<std::size_t>(traceless_dim(d))) {
    throw std::invalid_argument("TorusPoint: expected " + std::to_string(traceless_dim(d)) + " residues");
  }
  for (auto r : r_)
    if (r >= q_) throw std::invalid_argument("TorusPoint: residue out of range [0, Q)");
}

TorusPoint TorusPoint::zero(int d, std::uint64_t modulus) {
  return TorusPoint(d, modulus, std::vector<std::uint64_t>(static_cast<std::size_t>(traceless_dim(d)), 0));
}

bool TorusPoint::is_zero() const {
  for (auto r : r_)
    if (r != 0) return false;
  return true;
}

TorusAction::TorusAction(const Adjoint& ad, std::uint64_t modulus)
    : d_(ad.dim()), n_(traceless_dim(ad.dim())), q_(modulus) {
  m_.resize(static_cast<std::size_t>(n_) * n_);
  const auto& a = ad.matrix();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m_[static_cast<std::size_t>(i) * n_ + j] = mod_reduce(a(j, i), q_);
}

void TorusAction::apply(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) const {
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t* row = m_.data() + static_cast<std::size_t>(i) * n_;
    std::uint64_t acc = 0;
    for (int j = 0; j < n_; ++j) {
      if (row[j] != 0 && in[j] != 0) acc = add_mod(acc, mul_mod(row[j], in[j], q_), q_);
    }
    out[i] = acc;
  }
}

TorusPoint TorusAction::apply(const TorusPoint& x) const {
  if (x.dim() != d_) throw std::invalid_argument("TorusAction: dimension mismatch");
  if (x.modulus() != q_) throw std::invalid_argument("TorusAction: modulus mismatch");
  std::vector<std::uint64_t> out(x.residues().size());
  apply(x.residues(), out);
  return TorusPoint(d_, q_, std::move(out));
}

TorusPoint act(const Unimodular& g, const TorusPoint& x) { return TorusAction(g, x.modulus()).apply(x); }
TorusPoint act(const Adjoint& ad, const TorusPoint& x) { return TorusAction(ad, x.modulus()).apply(x); }

std::complex<double> unit_phase(std::uint64_t k, std::uint64_t q) {
  // Centre into (-q/2, q/2] so the angle argument stays small.
  long double frac = (k > q / 2) ? -static_cast<long double>(q - k) / q : static_cast<long double>(k) / q;
  const long double ang = 2 * std::numbers::pi_v<long double> * frac;
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

std::complex<double> CharacterValue::value() const { return unit_phase(phase, modulus); }

std::uint64_t phase_index(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> h_mod,
                          std::uint64_t modulus) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) s = add_mod(s, mul_mod(residues[i], h_mod[i], modulus), modulus);
  return s;
}

std::vector<std::uint64_t> reduce_frequency(const Coords& h, std::uint64_t modulus) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(h.size()));
  for (Eigen::Index i = 0; i < h.size(); ++i) out[i] = mod_reduce(h[i], modulus);
  return out;
}

CharacterValue character(const TorusPoint& x, const Coords& h) {
  if (x.dim() != h.dim()) throw std::invalid_argument("character: dimension mismatch");
  const auto hm = reduce_frequency(h, x.modulus());
  return {phase_index(x.residues(), hm, x.modulus()), x.modulus()};
}

TorusPoint random_point(int d, std::uint64_t modulus, std::uint64_t seed) {
  if (!is_prime(modulus)) throw std::invalid_argument("random_point: modulus must be prime");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, modulus - 1);
  std::vector<std::uint64_t> r(static_cast<std::size_t>(traceless_dim(d)));
  for (;;) {
    for (auto& v : r) v = dist(rng);
    TorusPoint p(d, modulus, r);
    if (!p.is_zero()) return p;
  }
}

}  // namespace bohrwalk
