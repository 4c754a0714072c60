#include "bohrwalk/proximal.hpp"

#include "bohrwalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bohrwalk {
namespace {

using QPoly = std::vector<Rational>;  // lowest degree first, no trailing zeros

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

QPoly make_monic(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

// Quotient and remainder; b must be non-zero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

bool is_one(const QPoly& p) { return p.size() == 1 && p[0] == 1; }

IntPolynomial to_int(const QPoly& p) {
  std::vector<BigInt> c;
  c.reserve(p.size());
  for (const auto& r : p) {
    if (denominator(r) != 1) throw std::logic_error("squarefree factor is not integral");
    c.push_back(numerator(r));
  }
  return IntPolynomial(std::move(c));
}

using cplx = std::complex<long double>;

// Aberth-Ehrlich on a square-free monic polynomial with long double coefficients.
std::vector<cplx> aberth(const std::vector<long double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<cplx> z(static_cast<std::size_t>(n));
  if (n == 0) return z;
  if (n == 1) {
    z[0] = -c[0];
    return z;
  }
  long double bound = 0;  // Cauchy bound
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
  bound += 1;
  const long double r0 = std::pow(std::abs(c[0]) + 1e-30L, 1.0L / n);
  const long double radius = std::clamp(r0, 1e-3L, bound);
  for (int k = 0; k < n; ++k) {
    const long double ang = 2 * std::numbers::pi_v<long double> * (k + 0.25L) / n + 0.4L;
    z[k] = std::polar(radius, ang);
  }

  auto eval = [&](cplx x, cplx& dp) {
    cplx p = c[n];
    dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    return p;
  };

  constexpr int max_iter = 1000;
  const long double eps = 64 * std::numeric_limits<long double>::epsilon();
  for (int iter = 0; iter < max_iter; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      cplx dp;
      cplx p = eval(z[k], dp);
      if (p == cplx(0)) continue;
      cplx ratio = p / dp;
      cplx sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      cplx step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (worst < eps) {
      // Newton polish: roots are simple here.
      for (auto& x : z) {
        for (int s = 0; s < 3; ++s) {
          cplx dp;
          cplx p = eval(x, dp);
          if (dp != cplx(0)) x -= p / dp;
        }
      }
      return z;
    }
  }
  throw RootFindingError("eigen_moduli: Aberth iteration did not converge after " +
                         std::to_string(max_iter) + " sweeps");
}

}  // namespace

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
  QPoly a;
  for (const auto& c : p.coefficients()) a.emplace_back(c);
  std::vector<std::pair<IntPolynomial, int>> out;
  if (p.degree() == 0) return out;

  QPoly da = derivative(a);
  QPoly b = gcd(a, da);
  QPoly c = divmod(a, b).first;
  QPoly d = sub(divmod(da, b).first, derivative(c));
  int mult = 1;
  while (!is_one(c)) {
    QPoly g = gcd(c, d);
    if (!is_one(g)) out.emplace_back(to_int(g), mult);
    c = divmod(c, g).first;
    d = sub(divmod(d, g).first, derivative(c));
    ++mult;
  }
  return out;
}

RootReport eigen_moduli(const IntPolynomial& p, double tol) {
  if (p.degree() < 1) throw std::invalid_argument("eigen_moduli: degree must be at least 1");
  RootReport report;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    std::vector<long double> c;
    for (const auto& v : factor.coefficients()) c.push_back(v.convert_to<long double>());
    for (const auto& z : aberth(c)) {
      report.roots.push_back({std::complex<double>(static_cast<double>(z.real()),
                                                   static_cast<double>(z.imag())),
                              mult});
    }
  }

  std::vector<std::pair<double, int>> mods;
  for (const auto& r : report.roots) mods.emplace_back(std::abs(r.value), r.multiplicity);
  std::sort(mods.begin(), mods.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [m, mult] : mods) {
    if (!report.clusters.empty()) {
      auto& last = report.clusters.back();
      if (last.modulus - m < tol * (1 + last.modulus)) {
        last.multiplicity += mult;
        continue;
      }
    }
    report.clusters.push_back({m, mult});
  }
  return report;
}

SpectrumReport spectrum_report(const IntPolynomial& p, double tol) {
  RootReport roots = eigen_moduli(p, tol);
  SpectrumReport rep;
  rep.dimension = p.degree();
  rep.char_poly = p.coefficients();
  for (const auto& c : roots.clusters) {
    rep.moduli.push_back(c.modulus);
    rep.multiplicities.push_back(c.multiplicity);
  }
  if (rep.moduli.size() >= 2) rep.top_gap = rep.moduli[0] / rep.moduli[1];

  // The top modulus must be attained by a single root that is algebraically simple.
  int top_roots = 0;
  bool top_simple = true;
  for (const auto& r : roots.roots) {
    if (rep.moduli[0] - std::abs(r.value) < tol * (1 + rep.moduli[0])) {
      ++top_roots;
      top_simple = top_simple && r.multiplicity == 1;
    }
  }
  rep.proximal = top_roots == 1 && top_simple && rep.multiplicities[0] == 1 && rep.top_gap > 1 + tol;
  return rep;
}

SpectrumReport is_proximal(const Adjoint& ad, double tol) {
  return spectrum_report(char_poly<BigInt>(ad.matrix()), tol);
}

SpectrumReport is_proximal(const Unimodular& g, double tol) {
  return is_proximal(adjoint_matrix(g), tol);
}

}  // namespace bohrwalk
