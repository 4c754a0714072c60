#include "bohrwalk/spectral.hpp"

#include "parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <span>
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bohrwalk {
namespace {

// Distance from tau_i(h) to the nearest integer, per coordinate.
void tau_distances(const BohrSpec& spec, std::span<const std::int64_t> h, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(spec.n()));
  for (int i = 0; i < spec.n(); ++i) {
    double s = 0, absum = 0;
    const auto& row = spec.frequencies_double()[i];
    for (int j = 0; j < spec.rank(); ++j) {
      const double term = row[j] * static_cast<double>(h[j]);
      s += term;
      absum += std::abs(term);
    }
    if (absum > 0x1p40) {
      // Large arguments lose too many bits in double; go through the high-precision path.
      IntVector v(spec.rank());
      for (int j = 0; j < spec.rank(); ++j) v(j) = BigInt(h[j]);
      const double t = tau(spec, v).coords[i];
      out[i] = std::min(t, 1.0 - t);
      continue;
    }
    out[i] = std::abs(s - std::round(s));
  }
}

double autocorr_fast(const RotationSystem& sys, std::span<const std::int64_t> h, std::vector<double>& scratch) {
  tau_distances(sys.spec(), h, scratch);
  double v = 1.0;
  for (int i = 0; i < sys.spec().n(); ++i) {
    v *= std::max(0.0, 2 * sys.spec().radii_double()[i] - scratch[i]);
    if (v == 0.0) break;
  }
  return v;
}

// Visits every h in [-k, k]^r, split into blocks by the first coordinate.
// Partial sums are kept per block and merged in block order.
template <class Value, class Term>
Value box_sum(int rank, std::int64_t k, int workers, Term term) {
  const std::size_t blocks = static_cast<std::size_t>(2 * k + 1);
  std::vector<Value> partial(blocks, Value{});
  detail::parallel_blocks(blocks, workers, [&](std::size_t b) {
    std::vector<std::int64_t> h(static_cast<std::size_t>(rank), -k);
    h[0] = -k + static_cast<std::int64_t>(b);
    std::vector<double> scratch;
    Value acc{};
    for (;;) {
      acc += term(std::span<const std::int64_t>(h), scratch);
      int i = rank - 1;
      while (i >= 1 && h[i] == k) h[i--] = -k;
      if (i < 1) break;
      ++h[i];
    }
    partial[b] = acc;
  });
  Value total{};
  for (const auto& p : partial) total += p;
  return total;
}

double box_size(int rank, std::int64_t k) { return std::pow(static_cast<double>(2 * k + 1), rank); }

}  // namespace

RotationSystem::RotationSystem(BohrSpec spec) : spec_(std::move(spec)) {
  if (!spec_.zero_centered()) throw std::invalid_argument("RotationSystem: window must be centred at 0");
  for (const auto& r : spec_.window().radii)
    if (r > Rational(1, 8)) throw std::invalid_argument("RotationSystem: radii must be at most 1/8");
}

double RotationSystem::volume() const { return spec_.volume().convert_to<double>(); }

double autocorr(const RotationSystem& system, const IntVector& h) {
  if (h.size() != system.rank()) throw std::invalid_argument("autocorr: rank mismatch");
  bool small = true;
  std::vector<std::int64_t> hv(static_cast<std::size_t>(h.size()));
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    if (!fits_int64(h(j))) {
      small = false;
      break;
    }
    hv[j] = h(j).convert_to<std::int64_t>();
  }
  if (small) {
    std::vector<double> scratch;
    return autocorr_fast(system, std::span<const std::int64_t>(hv), scratch);
  }
  const TauValue t = tau(system.spec(), h);
  double v = 1.0;
  for (int i = 0; i < system.spec().n(); ++i) {
    const double dist = std::min(t.coords[i], 1.0 - t.coords[i]);
    v *= std::max(0.0, 2 * system.spec().radii_double()[i] - dist);
  }
  return v;
}

double folner_average(const RotationSystem& system, std::int64_t k, std::int64_t q, int workers) {
  if (k < 1 || q < 1) throw std::invalid_argument("folner_average: k and q must be positive");
  const int r = system.rank();
  const double total = box_sum<double>(r, k, workers, [&](std::span<const std::int64_t> h, std::vector<double>& s) {
    std::vector<std::int64_t> qh(h.begin(), h.end());
    for (auto& v : qh) v *= q;
    return autocorr_fast(system, std::span<const std::int64_t>(qh), s);
  });
  return total / box_size(r, k);
}

RationalPoint RationalPoint::parse(std::string_view text) {
  std::vector<Rational> coords;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
  if (coords.empty()) throw std::invalid_argument("RationalPoint: empty");
  BigInt lcd = 1;
  for (const auto& c : coords) lcd = boost::multiprecision::lcm(lcd, denominator(c));
  RationalPoint p;
  p.denom = lcd;
  for (const auto& c : coords) {
    BigInt num = numerator(c) * (lcd / denominator(c));
    num %= lcd;
    if (num < 0) num += lcd;
    p.numerators.push_back(num);
  }
  return p;
}

std::string RationalPoint::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    if (i) os << ',';
    Rational r(numerators[i], denom);
    os << r.str();
  }
  return os.str();
}

AtomEstimate atom_mass(const RotationSystem& system, const RationalPoint& x0, std::int64_t k, int workers) {
  const int r = system.rank();
  if (static_cast<int>(x0.numerators.size()) != r) throw std::invalid_argument("atom_mass: point has wrong rank");
  if (k < 1) throw std::invalid_argument("atom_mass: k must be positive");
  if (x0.denom < 1 || !fits_int64(x0.denom)) {
    throw std::invalid_argument("atom_mass: denominator must be a positive 64-bit integer");
  }
  const std::int64_t q = x0.denom.convert_to<std::int64_t>();
  std::vector<std::int64_t> p;
  for (const auto& n : x0.numerators) p.push_back(n.convert_to<std::int64_t>());

  const auto total = box_sum<std::complex<double>>(
      r, k, workers, [&](std::span<const std::int64_t> h, std::vector<double>& s) -> std::complex<double> {
        const double a = autocorr_fast(system, h, s);
        if (a == 0.0) return 0.0;
        // exact phase index sum_j p_j h_j mod q
        __int128 idx = 0;
        for (int j = 0; j < r; ++j) idx = (idx + static_cast<__int128>(p[j]) * h[j]) % q;
        if (idx < 0) idx += q;
        const double ang = -2 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(q);
        return a * std::complex<double>(std::cos(ang), std::sin(ang));
      });
  AtomEstimate est;
  est.value = total / box_size(r, k);
  est.modulus = std::abs(est.value);
  return est;
}

std::complex<double> character_average(const std::vector<Frequency>& theta, std::int64_t k) {
  if (theta.empty()) throw std::invalid_argument("character_average: no frequencies");
  if (k < 1) throw std::invalid_argument("character_average: k must be positive");
  bool trivial = true, rational = true;
  for (const auto& f : theta) {
    trivial = trivial && f.is_integer();
    rational = rational && !f.irrational();
  }
  if (trivial) throw std::invalid_argument("character_average: trivial character (average is identically 1)");
  const int r = static_cast<int>(theta.size());
  const double cells = std::pow(static_cast<double>(k), r);

  auto for_each_g = [&](auto&& body) {
    std::vector<std::int64_t> g(static_cast<std::size_t>(r), 0);
    for (;;) {
      body(g);
      int i = r - 1;
      while (i >= 0 && g[i] == k - 1) g[i--] = 0;
      if (i < 0) break;
      ++g[i];
    }
  };

  BigInt lcd = 1;
  for (const auto& f : theta) lcd = boost::multiprecision::lcm(lcd, denominator(f.rational_part()));
  if (rational && lcd <= 10'000'000) {
    // Exact histogram of phase indices; sum_j e(j/q) = 0 removes the common floor.
    const std::int64_t q = lcd.convert_to<std::int64_t>();
    std::vector<std::int64_t> p;
    for (const auto& f : theta) {
      BigInt n = numerator(f.rational_part()) * (lcd / denominator(f.rational_part()));
      n %= lcd;
      if (n < 0) n += lcd;
      p.push_back(n.convert_to<std::int64_t>());
    }
    std::vector<std::int64_t> hist(static_cast<std::size_t>(q), 0);
    for_each_g([&](const std::vector<std::int64_t>& g) {
      __int128 idx = 0;
      for (int j = 0; j < r; ++j) idx = (idx + static_cast<__int128>(p[j]) * g[j]) % q;
      ++hist[static_cast<std::size_t>(idx)];
    });
    const std::int64_t floor = *std::min_element(hist.begin(), hist.end());
    std::complex<double> acc = 0;
    for (std::int64_t j = 0; j < q; ++j) {
      const std::int64_t c = hist[j] - floor;
      if (c == 0) continue;
      const double ang = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
      acc += static_cast<double>(c) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc / cells;
  }

  std::vector<double> fd;
  for (const auto& f : theta) fd.push_back(f.to_double());
  std::complex<double> acc = 0;
  for_each_g([&](const std::vector<std::int64_t>& g) {
    double s = 0;
    for (int j = 0; j < r; ++j) s += fd[j] * static_cast<double>(g[j]);
    const double ang = 2 * std::numbers::pi * (s - std::round(s));
    acc += std::complex<double>(std::cos(ang), std::sin(ang));
  });
  return acc / cells;
}

double min_gram_eigenvalue(const RotationSystem& system, const std::vector<IntVector>& points) {
  const auto m = static_cast<Eigen::Index>(points.size());
  if (m == 0) throw std::invalid_argument("min_gram_eigenvalue: no points");
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) gram(i, j) = autocorr(system, IntVector(points[i] - points[j]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace bohrwalk
