// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include "bohrwalk/conjsearch.hpp"
#include "bohrwalk/proximal.hpp"
#include "bohrwalk/spectral.hpp"
#include "bohrwalk/walk.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

using namespace bohrwalk;
using testing::mat;

namespace {

// Tolerances and limits.
constexpr double kAdjointSeconds = 1.0;
constexpr double kProximalTol = 1e-9;
constexpr double kProximalSeconds = 5.0;
constexpr std::size_t kWalkSamples = 100000;
constexpr int kWalkH = 3;
constexpr double kWalkMaxAt40 = 0.05;
constexpr double kWalkSeconds = 120.0;
constexpr int kFourierInstances = 50;
constexpr double kFourierTol = 1e-10;
constexpr double kFourierSeconds = 30.0;
constexpr double kFolnerTol = 5e-3;
constexpr double kAtomTol = 5e-3;
constexpr double kCharacterTol = 1e-3;
constexpr double kGramTol = 1e-9;
constexpr double kSpectralSeconds = 60.0;
constexpr int kWitnessDepth = 12;
constexpr int kWitnessEscalatedDepth = 16;
constexpr double kWitnessSeconds = 300.0;
constexpr double kCoverFraction = 0.95;
constexpr double kCoverSeconds = 120.0;
constexpr int kCharpolySamples = 10000;
constexpr std::size_t kMonteCarloSamples = 1000000;
constexpr double kMonteCarloTol = 3e-3;

int workers() { return static_cast<int>(std::min(4u, std::max(1u, std::thread::hardware_concurrency()))); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit_seconds) {
    out.pass = false;
    out.detail << " [over time limit " << limit_seconds << " s]";
  }
  if (!out.pass) ++failures;
  std::printf("criterion %d %s  %-34s %8.3f s %s\n", id, out.pass ? "PASS" : "FAIL", name, secs, out.detail.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "exact adjoint of B_2", kAdjointSeconds, [](Outcome& o) {
    const Adjoint ad = adjoint_matrix(b_matrix<BigInt>(2));
    o.require(ad.matrix() == mat({{3, -2, 1}, {-4, 4, -1}, {2, -1, 1}}), "Ad(B_2) entries");
    // (1 - l)(l^2 - 7 l + 1) up to sign is l^3 - 8 l^2 + 8 l - 1
    o.require(testing::coeffs(char_poly<BigInt>(ad.matrix())) == std::vector<std::int64_t>{-1, 8, -8, 1}, "char_poly");
    o.detail << "char_poly = l^3 - 8l^2 + 8l - 1";
  });

  criterion(2, "proximality of B_d, d = 2..5", kProximalSeconds, [](Outcome& o) {
    const double top = (7 + 3 * std::sqrt(5.0)) / 2;
    for (int d = 2; d <= 5; ++d) {
      const SpectrumReport r = is_proximal(b_matrix<BigInt>(d), kProximalTol);
      o.require(r.proximal, "B_" + std::to_string(d) + " proximal");
      o.require(std::abs(r.moduli.front() - top) <= 1e-9, "top modulus d=" + std::to_string(d));
      if (d == 4) {
        const double s5 = std::sqrt(5.0);
        const std::vector<double> want{top, (3 + s5) / 2, 1.0, (3 - s5) / 2, (7 - 3 * s5) / 2};
        bool ok = r.moduli.size() == want.size() && r.multiplicities == std::vector<int>{1, 4, 5, 4, 1};
        for (std::size_t i = 0; ok && i < want.size(); ++i) ok = std::abs(r.moduli[i] - want[i]) <= 1e-9;
        o.require(ok, "d=4 modulus multiset");
        o.detail << "d=4 multiplicities 1,4,5,4,1; gap " << r.top_gap;
      }
    }
  });

  criterion(3, "walk equidistribution, d = 2", kWalkSeconds, [](Outcome& o) {
    const auto mu = FiniteSupportMeasure::uniform(elementary_generators<BigInt>(2));
    const auto start = AtomicTorusMeasure::dirac(random_point(2, kMersenne61, 20240601));
    const std::vector<int> ks{5, 10, 20, 40};
    const auto clouds = sample_walk_checkpoints(mu, ks, start, kWalkSamples, 7, workers());
    const double slack = 3.0 / std::sqrt(static_cast<double>(kWalkSamples));
    double prev = 1.0;
    o.detail << "max |coef|:";
    for (const auto& c : clouds) {
      const double m = weyl_report(c, kWalkH, workers()).max_modulus;
      o.detail << " k=" << c.meta().k << ":" << m;
      o.require(m <= prev + slack, "non-increasing at k=" + std::to_string(c.meta().k));
      prev = m;
    }
    o.require(prev <= kWalkMaxAt40, "max at k=40 <= 0.05");
  });

  criterion(4, "Fourier convolution identity", kFourierSeconds, [](Outcome& o) {
    std::mt19937_64 rng(4);
    const auto freqs = frequency_ball(2, 3);
    double worst = 0;
    for (int inst = 0; inst < kFourierInstances; ++inst) {
      const std::size_t support = 1 + rng() % 4, atoms = 1 + rng() % 3;
      const int k = static_cast<int>(rng() % 4);
      std::vector<Unimodular> gs;
      while (gs.size() < support) {
        Unimodular g = testing::random_word(2, 1 + static_cast<int>(rng() % 3), rng);
        bool fresh = true;
        for (const auto& s : gs) fresh = fresh && !(s == g);
        if (fresh) gs.push_back(g);
      }
      std::vector<TorusAtom> nu;
      for (std::size_t i = 0; i < atoms; ++i) {
        nu.push_back({random_point(2, kMersenne61, rng()), Rational(1, static_cast<long>(atoms))});
      }
      const auto mu = FiniteSupportMeasure::uniform(gs);
      const AtomicTorusMeasure nu_m(nu);
      for (int f = 0; f < 10; ++f) {
        const auto c = fourier_convolution_check(mu, nu_m, freqs[rng() % freqs.size()], k);
        worst = std::max(worst, c.error);
      }
    }
    o.require(worst <= kFourierTol, "|lhs - rhs| <= 1e-10");
    o.detail << "worst |lhs - rhs| = " << worst << " over " << kFourierInstances * 10 << " checks";
  });

  criterion(5, "spectral suite, alpha = sqrt2", kSpectralSeconds, [](Outcome& o) {
    const RotationSystem sys(BohrSpec::integers(Frequency::parse("sqrt2"), Rational(1, 8)));
    for (std::int64_t q : {1, 2, 3}) {
      const double a = folner_average(sys, 2000, q, workers());
      o.require(std::abs(a - 0.0625) <= kFolnerTol, "Følner q=" + std::to_string(q));
      o.detail << "F(q=" << q << ")=" << a << " ";
    }
    for (const char* x : {"1/2", "1/3", "2/5"}) {
      const double m = atom_mass(sys, RationalPoint::parse(x), 2000, workers()).modulus;
      o.require(m <= kAtomTol, std::string("atom at ") + x);
      o.detail << "atom(" << x << ")=" << m << " ";
    }
    const double ch = std::abs(character_average({Frequency::parse("sqrt2")}, 2000));
    o.require(ch <= kCharacterTol, "character average");
    o.detail << "char=" << ch << " ";

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> e(-1000, 1000);
    std::vector<IntVector> pts;
    for (int i = 0; i < 8; ++i) {
      IntVector h(1);
      h(0) = BigInt(e(rng));
      pts.push_back(h);
    }
    const double lam = min_gram_eigenvalue(sys, pts);
    o.require(lam >= -kGramTol, "Gram PSD");
    o.detail << "min eig=" << lam;
  });

  criterion(6, "conjugacy witness for [[1,2],[3,-1]]", kWitnessSeconds, [](Outcome& o) {
    const BohrSpec spec(Ambient::Lattice, 2,
                        {{Frequency::parse("sqrt2"), Frequency::parse("sqrt3"), Frequency::parse("sqrt5")}},
                        Window{{Rational(0)}, {Rational(1, 20)}});
    const Traceless c(mat({{1, 2}, {3, -1}}));
    SearchOptions opts;
    opts.workers = workers();
    SearchResult r = find_conjugate_in_bohr(c, spec, nullptr, kWitnessDepth, opts);
    if (!r.witness) {
      o.detail << "none by L=" << kWitnessDepth << ", escalated; ";
      r = find_conjugate_in_bohr(c, spec, nullptr, kWitnessEscalatedDepth, opts);
    }
    o.require(r.witness.has_value(), "witness exists");
    if (!r.witness) return;
    const Witness& w = *r.witness;
    const auto g = testing::to_oracle(w.g.matrix());
    o.require(oracle::mul(oracle::mul(oracle::inverse2(g), testing::to_oracle(w.a.matrix())), g) ==
                  testing::to_oracle(c.matrix()),
              "g^-1 A g = C");
    o.require(w.membership.margin > w.membership.error, "margin exceeds evaluation error");
    o.detail << "L=" << w.length << " A=[[" << w.a(0, 0) << "," << w.a(0, 1) << "],[" << w.a(1, 0) << "," << w.a(1, 1)
             << "]] tau=" << w.tau_value.coords[0] << " margin=" << w.membership.margin;
  });

  criterion(7, "discriminant cover, t in [-50, 50]", kCoverSeconds, [](Outcome& o) {
    const BohrSpec spec = BohrSpec::integers(Frequency::parse("sqrt2"), Rational(1, 10));
    CoverOptions opts;
    opts.workers = workers();
    const CoverageTable t = discriminant_cover(spec, nullptr, 100000, -50, 50, opts);
    const double frac = static_cast<double>(t.found()) / static_cast<double>(t.rows.size());
    o.require(frac >= kCoverFraction, "coverage >= 95%");
    for (const auto& row : t.rows) {
      if (row.found) o.require(row.x * row.y - row.z * row.z == row.t, "xy - z^2 = t at t=" + std::to_string(row.t));
      // targets -z^2 with z a member go through x = 0
      for (std::int64_t z = 0; z * z <= 50; ++z) {
        IntVector h(1);
        h(0) = z;
        if (row.t == -z * z && contains(spec, nullptr, h)) {
          o.require(row.found && row.x == 0, "zero-member shortcut at t=" + std::to_string(row.t));
        }
      }
    }
    o.detail << t.found() << "/" << t.rows.size() << " targets, " << t.members << " members";
  });

  criterion(8, "oracle equivalences", 600.0, [](Outcome& o) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> e(-1, 1);
    int mismatches = 0;
    for (int i = 0; i < kCharpolySamples; ++i) {
      const int d = 1 + static_cast<int>(rng() % 3);
      oracle::Mat m(d, std::vector<std::int64_t>(d));
      for (auto& row : m)
        for (auto& v : row) v = e(rng);
      mismatches += testing::coeffs(char_poly<BigInt>(testing::from_oracle(m))) != oracle::char_poly(m);
    }
    o.require(mismatches == 0, "char_poly vs determinant expansion");

    const RotationSystem sys(BohrSpec::integers(Frequency::parse("sqrt2"), Rational(1, 8)));
    double worst = 0;
    for (long h : {1, 3, 7, 12}) {
      IntVector v(1);
      v(0) = h;
      const double mc = oracle::overlap_monte_carlo({0.125}, tau(sys.spec(), v).coords, kMonteCarloSamples, 80 + h);
      worst = std::max(worst, std::abs(autocorr(sys, v) - mc));
    }
    o.require(worst <= kMonteCarloTol, "autocorr vs Monte Carlo");

    const std::size_t ball2 = ball(elementary_generators<BigInt>(2), 2).size();
    const std::size_t oracle2 = oracle::words_up_to(oracle::elementary(2), 2).size();
    o.require(ball2 == 17 && oracle2 == 17, "ball(2) = 17");
    o.detail << mismatches << " char_poly mismatches; MC gap " << worst << "; ball(2)=" << ball2;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
