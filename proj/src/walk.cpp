#include "bohrwalk/walk.hpp"

#include "bohrwalk/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace bohrwalk {
namespace {

constexpr std::size_t kBlock = 4096;

std::discrete_distribution<std::size_t> make_picker(const std::vector<Rational>& weights) {
  std::vector<double> w;
  w.reserve(weights.size());
  for (const auto& r : weights) w.push_back(r.convert_to<double>());
  return std::discrete_distribution<std::size_t>(w.begin(), w.end());
}

// Fills samples [first, last) of a walk, recording the state after each checkpoint.
struct WalkKernel {
  std::vector<TorusAction> steps;
  std::vector<Rational> step_weights;
  std::vector<std::vector<std::uint64_t>> starts;
  std::vector<Rational> start_weights;
  int n;

  void run(std::size_t first, std::size_t last, std::uint64_t seed, const std::vector<int>& ks,
           std::vector<std::vector<std::uint64_t>>& out) const {
    auto pick_step = make_picker(step_weights);
    auto pick_start = make_picker(start_weights);
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(n)), tmp(static_cast<std::size_t>(n));
    for (std::size_t i = first; i < last; ++i) {
      std::mt19937_64 rng(derive_seed(seed, i));
      cur = starts[starts.size() == 1 ? 0 : pick_start(rng)];
      int done = 0;
      for (std::size_t c = 0; c < ks.size(); ++c) {
        for (; done < ks[c]; ++done) {
          const std::size_t s = steps.size() == 1 ? 0 : pick_step(rng);
          steps[s].apply(cur, tmp);
          cur.swap(tmp);
        }
        std::copy(cur.begin(), cur.end(), out[c].begin() + static_cast<std::ptrdiff_t>(i * n));
      }
    }
  }
};

}  // namespace

FiniteSupportMeasure::FiniteSupportMeasure(std::vector<GroupAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("FiniteSupportMeasure: empty support");
  const int d = atoms_.front().g.dim();
  Rational total(0);
  std::unordered_map<MatrixKey, int, MatrixKeyHash> seen;
  for (const auto& a : atoms_) {
    if (a.g.dim() != d) throw std::invalid_argument("FiniteSupportMeasure: mixed dimensions");
    if (a.p <= 0) throw std::invalid_argument("FiniteSupportMeasure: probabilities must be positive");
    if (!seen.emplace(MatrixKey::of(a.g.matrix()), 0).second) {
      throw std::invalid_argument("FiniteSupportMeasure: duplicate support matrix");
    }
    total += a.p;
  }
  if (total != 1) throw std::invalid_argument("FiniteSupportMeasure: probabilities must sum to 1");
}

FiniteSupportMeasure FiniteSupportMeasure::dirac(Unimodular g) {
  return FiniteSupportMeasure({GroupAtom{std::move(g), Rational(1)}});
}

FiniteSupportMeasure FiniteSupportMeasure::uniform(std::vector<Unimodular> support) {
  if (support.empty()) throw std::invalid_argument("FiniteSupportMeasure: empty support");
  const Rational p(1, static_cast<long>(support.size()));
  std::vector<GroupAtom> atoms;
  atoms.reserve(support.size());
  for (auto& g : support) atoms.push_back({std::move(g), p});
  return FiniteSupportMeasure(std::move(atoms));
}

Rational FiniteSupportMeasure::mass_of(const Unimodular& g) const {
  for (const auto& a : atoms_)
    if (a.g == g) return a.p;
  return Rational(0);
}

Rational FiniteSupportMeasure::total_mass() const {
  Rational t(0);
  for (const auto& a : atoms_) t += a.p;
  return t;
}

FiniteSupportMeasure convolve_group(const FiniteSupportMeasure& a, const FiniteSupportMeasure& b,
                                    std::size_t cap) {
  if (a.dim() != b.dim()) throw std::invalid_argument("convolve_group: dimension mismatch");
  std::unordered_map<MatrixKey, std::size_t, MatrixKeyHash> index;
  std::vector<GroupAtom> out;
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) {
      Unimodular g = x.g * y.g;
      Rational p = x.p * y.p;
      auto [it, fresh] = index.emplace(MatrixKey::of(g.matrix()), out.size());
      if (fresh) {
        if (out.size() >= cap) throw SizeCapExceeded("convolve_group: support cap exceeded", out.size() + 1);
        out.push_back({std::move(g), std::move(p)});
      } else {
        out[it->second].p += p;
      }
    }
  }
  return FiniteSupportMeasure(std::move(out));
}

FiniteSupportMeasure convolution_power(const FiniteSupportMeasure& mu, int k, std::size_t cap) {
  if (k < 0) throw std::invalid_argument("convolution_power: k must be non-negative");
  FiniteSupportMeasure acc = FiniteSupportMeasure::dirac(Unimodular::identity(mu.dim()));
  for (int i = 0; i < k; ++i) acc = convolve_group(acc, mu, cap);
  return acc;
}

AtomicTorusMeasure::AtomicTorusMeasure(std::vector<TorusAtom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("AtomicTorusMeasure: no atoms");
  const int d = atoms.front().x.dim();
  const std::uint64_t q = atoms.front().x.modulus();
  std::map<TorusPoint, std::size_t> index;
  Rational total(0);
  for (auto& a : atoms) {
    if (a.x.dim() != d || a.x.modulus() != q) {
      throw std::invalid_argument("AtomicTorusMeasure: atoms must share d and Q");
    }
    if (a.w <= 0) throw std::invalid_argument("AtomicTorusMeasure: weights must be positive");
    total += a.w;
    auto [it, fresh] = index.emplace(a.x, atoms_.size());
    if (fresh) {
      atoms_.push_back(std::move(a));
    } else {
      atoms_[it->second].w += a.w;
    }
  }
  if (total != 1) throw std::invalid_argument("AtomicTorusMeasure: weights must sum to 1");
}

AtomicTorusMeasure AtomicTorusMeasure::dirac(TorusPoint x) {
  return AtomicTorusMeasure({TorusAtom{std::move(x), Rational(1)}});
}

Rational AtomicTorusMeasure::total_mass() const {
  Rational t(0);
  for (const auto& a : atoms_) t += a.w;
  return t;
}

std::complex<double> AtomicTorusMeasure::fourier(const Coords& h) const {
  std::complex<double> acc = 0;
  for (const auto& a : atoms_) acc += a.w.convert_to<double>() * character(a.x, h).value();
  return acc;
}

AtomicTorusMeasure pushforward_exact(const FiniteSupportMeasure& mu, const AtomicTorusMeasure& nu,
                                     std::size_t cap) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("pushforward_exact: dimension mismatch");
  std::map<TorusPoint, Rational> merged;
  for (const auto& g : mu.atoms()) {
    TorusAction action(g.g, nu.modulus());
    for (const auto& x : nu.atoms()) {
      auto [it, fresh] = merged.try_emplace(action.apply(x.x), Rational(0));
      if (fresh && merged.size() > cap) {
        throw SizeCapExceeded("pushforward_exact: atom cap exceeded", merged.size());
      }
      it->second += g.p * x.w;
    }
  }
  std::vector<TorusAtom> atoms;
  atoms.reserve(merged.size());
  for (auto& [x, w] : merged) atoms.push_back({x, w});
  return AtomicTorusMeasure(std::move(atoms));
}

EmpiricalCloud::EmpiricalCloud(int d, std::uint64_t modulus, CloudMeta meta, std::vector<std::uint64_t> data)
    : d_(d), n_(traceless_dim(d)), q_(modulus), meta_(meta), data_(std::move(data)) {
  if (data_.size() != meta_.samples * static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("EmpiricalCloud: data size does not match sample count");
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finaliser over (master, index)
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<EmpiricalCloud> sample_walk_checkpoints(const FiniteSupportMeasure& mu, std::vector<int> ks,
                                                    const AtomicTorusMeasure& start, std::size_t samples,
                                                    std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("sample_walk: need at least one sample");
  if (ks.empty()) throw std::invalid_argument("sample_walk: no step counts");
  if (!std::is_sorted(ks.begin(), ks.end()) || ks.front() < 0) {
    throw std::invalid_argument("sample_walk: step counts must be non-negative and increasing");
  }
  if (mu.dim() != start.dim()) throw std::invalid_argument("sample_walk: dimension mismatch");

  const int d = start.dim();
  const std::uint64_t q = start.modulus();
  WalkKernel kernel;
  kernel.n = traceless_dim(d);
  for (const auto& a : mu.atoms()) {
    kernel.steps.emplace_back(a.g, q);
    kernel.step_weights.push_back(a.p);
  }
  for (const auto& a : start.atoms()) {
    kernel.starts.push_back(a.x.residues());
    kernel.start_weights.push_back(a.w);
  }

  std::vector<std::vector<std::uint64_t>> out(ks.size(), std::vector<std::uint64_t>(samples * kernel.n));
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  detail::parallel_blocks(blocks, workers, [&](std::size_t b) {
    kernel.run(b * kBlock, std::min(samples, (b + 1) * kBlock), seed, ks, out);
  });

  std::vector<EmpiricalCloud> clouds;
  clouds.reserve(ks.size());
  for (std::size_t c = 0; c < ks.size(); ++c) {
    clouds.emplace_back(d, q, CloudMeta{ks[c], samples, seed}, std::move(out[c]));
  }
  return clouds;
}

EmpiricalCloud sample_walk(const FiniteSupportMeasure& mu, int k, const AtomicTorusMeasure& start,
                           std::size_t samples, std::uint64_t seed, int workers) {
  if (k < 0) throw std::invalid_argument("sample_walk: k must be non-negative");
  return std::move(sample_walk_checkpoints(mu, {k}, start, samples, seed, workers).front());
}

std::vector<Coords> frequency_ball(int d, int H) {
  if (H < 1) throw std::invalid_argument("frequency_ball: H must be at least 1");
  const int n = traceless_dim(d);
  std::vector<Coords> out;
  std::vector<long> h(static_cast<std::size_t>(n), -H);
  for (;;) {
    bool zero = std::all_of(h.begin(), h.end(), [](long v) { return v == 0; });
    if (!zero) {
      IntVector v(n);
      for (int i = 0; i < n; ++i) v(i) = BigInt(h[i]);
      out.emplace_back(d, std::move(v));
    }
    int i = n - 1;
    while (i >= 0 && h[i] == H) h[i--] = -H;
    if (i < 0) break;
    ++h[i];
  }
  return out;
}

WeylReport weyl_report(const EmpiricalCloud& cloud, int H, int workers) {
  const int n = cloud.coords();
  const std::uint64_t q = cloud.modulus();
  WeylReport rep;
  rep.H = H;
  rep.frequencies = frequency_ball(cloud.dim(), H);

  // Full odometer over [-H, H]^n including h = 0; phases are updated by exact
  // modular additions, so every phase index is exact.
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) cells *= static_cast<std::size_t>(2 * H + 1);
  const std::size_t blocks = (cloud.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<std::complex<double>>> partial(blocks);

  detail::parallel_blocks(blocks, workers, [&](std::size_t b) {
    std::vector<std::complex<double>> acc(cells);
    std::vector<std::uint64_t> phase(static_cast<std::size_t>(n) + 1);
    std::vector<int> digit(static_cast<std::size_t>(n));
    const std::size_t last = std::min(cloud.size(), (b + 1) * kBlock);
    for (std::size_t p = b * kBlock; p < last; ++p) {
      auto x = cloud.point(p);
      // phase[i] = sum_{j<i} h_j x_j with h_j = -H for the starting corner
      std::uint64_t corner = 0;
      for (int j = 0; j < n; ++j) corner = add_mod(corner, x[j], q);
      corner = neg_mod(mul_mod(corner, static_cast<std::uint64_t>(H), q), q);
      std::fill(digit.begin(), digit.end(), 0);
      std::uint64_t s = corner;
      for (std::size_t cell = 0;; ++cell) {
        const double frac = (s > q / 2) ? -static_cast<double>(q - s) / static_cast<double>(q)
                                        : static_cast<double>(s) / static_cast<double>(q);
        const double ang = 2 * std::numbers::pi * frac;
        acc[cell] += std::complex<double>(std::cos(ang), std::sin(ang));
        if (cell + 1 == cells) break;
        // advance odometer: last coordinate fastest, matching frequency_ball order
        int i = n - 1;
        while (digit[i] == 2 * H) {
          digit[i] = 0;
          // h_i wraps from H back to -H: subtract 2H x_i
          s = add_mod(s, neg_mod(mul_mod(x[i], static_cast<std::uint64_t>(2 * H), q), q), q);
          --i;
        }
        ++digit[i];
        s = add_mod(s, x[i], q);
      }
    }
    partial[b] = std::move(acc);
  });

  std::vector<std::complex<double>> total(cells);
  for (const auto& part : partial)
    for (std::size_t c = 0; c < cells; ++c) total[c] += part[c];

  const double inv_n = 1.0 / static_cast<double>(cloud.size());
  const std::size_t zero_cell = (cells - 1) / 2;
  rep.coefficients.reserve(cells - 1);
  for (std::size_t c = 0; c < cells; ++c) {
    if (c == zero_cell) continue;
    rep.coefficients.push_back(total[c] * inv_n);
  }
  for (std::size_t i = 0; i < rep.coefficients.size(); ++i) {
    const double m = std::abs(rep.coefficients[i]);
    if (m > rep.max_modulus) {
      rep.max_modulus = m;
      rep.argmax = i;
    }
  }
  return rep;
}

FourierCheck fourier_convolution_check(const FiniteSupportMeasure& mu, const AtomicTorusMeasure& nu,
                                       const Coords& h, int k, std::size_t cap) {
  const FiniteSupportMeasure mk = convolution_power(mu, k, cap);

  FourierCheck out;
  const AtomicTorusMeasure pushed = pushforward_exact(mk, nu, cap);
  out.lhs = pushed.fourier(h);

  for (const auto& a : mk.atoms()) {
    const Coords moved = adjoint_matrix(a.g).apply(h);  // g^{-1} h g
    out.rhs += a.p.convert_to<double>() * nu.fourier(moved);
  }
  out.error = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace bohrwalk
