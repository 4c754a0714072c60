#pragma once

// Bohr sets B = tau^{-1}(U) over Lambda = Mat_d^0(Z) (rank d^2 - 1) or over Z
// (rank 1).  tau(h)_i = frac(sum_j f_ij h_j) with frequencies that are exact
// quadratic surds, U a product of open arcs.  Membership is certified: the
// evaluation error is bounded and points too close to the window boundary are
// reported as undecidable instead of being rounded either way.

#include "bohrwalk/intmat.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bohrwalk {

using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>,
                                                boost::multiprecision::et_off>;

/// (a + b * sqrt(m)) with rational a, b and square-free m >= 2 (or b = 0).
class Frequency {
 public:
  Frequency() = default;
  static Frequency rational(Rational r);
  static Frequency surd(Rational rational_part, Rational coefficient, long radicand);

  /// Accepts "sqrt2", "sqrt(2)", "√2", "3/7", "0.25", "-2*sqrt(5)", "1/2+sqrt3".
  static Frequency parse(std::string_view text);

  bool irrational() const { return b_ != 0; }
  /// An integer frequency gives the trivial character on Z.
  bool is_integer() const { return b_ == 0 && denominator(a_) == 1; }
  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  long radicand() const { return m_; }

  double to_double() const;
  HighFloat to_high() const;
  std::string str() const;

  friend bool operator==(const Frequency&, const Frequency&) = default;

 private:
  Rational a_{0};
  Rational b_{0};
  long m_ = 0;
};

enum class Ambient { Lattice, Integers };

/// Open arcs (center_i - radius_i, center_i + radius_i) on T^n.
struct Window {
  std::vector<Rational> centers;
  std::vector<Rational> radii;
};

class BohrSpec {
 public:
  /// Validates: radii in (0, 1/4], every frequency row has an irrational entry,
  /// row length equals the ambient rank.
  BohrSpec(Ambient ambient, int d, std::vector<std::vector<Frequency>> frequencies, Window window);

  static BohrSpec integers(Frequency alpha, Rational radius);

  Ambient ambient() const { return ambient_; }
  int d() const { return d_; }
  int n() const { return static_cast<int>(rows_.size()); }
  int rank() const { return ambient_ == Ambient::Integers ? 1 : traceless_dim(d_); }
  const std::vector<std::vector<Frequency>>& frequencies() const { return rows_; }
  const Window& window() const { return window_; }
  bool zero_centered() const;
  /// Product of window lengths.
  Rational volume() const;

  const std::vector<std::vector<double>>& frequencies_double() const { return f_double_; }
  const std::vector<std::vector<HighFloat>>& frequencies_high() const { return f_high_; }
  const std::vector<double>& centers_double() const { return c_double_; }
  const std::vector<double>& radii_double() const { return r_double_; }
  const std::vector<HighFloat>& centers_high() const { return c_high_; }
  const std::vector<HighFloat>& radii_high() const { return r_high_; }

  /// Ambient coordinates of a traceless matrix (Lattice ambient only).
  IntVector element(const Traceless& a) const;

 private:
  Ambient ambient_;
  int d_;
  std::vector<std::vector<Frequency>> rows_;
  Window window_;
  std::vector<std::vector<double>> f_double_;
  std::vector<std::vector<HighFloat>> f_high_;
  std::vector<double> c_double_, r_double_;
  std::vector<HighFloat> c_high_, r_high_;
};

/// Integer box lo <= h <= hi, coordinatewise.
struct Box {
  std::vector<BigInt> lo;
  std::vector<BigInt> hi;
  bool contains(const IntVector& h) const;
};

/// Complement of finitely many boxes: a density-one stand-in for a thick set.
struct ThickMask {
  std::vector<Box> excluded;
  bool excludes(const IntVector& h) const;
};

/// tau(h) on T^n, coordinates in [0, 1), each within `error` of the true value.
struct TauValue {
  std::vector<double> coords;
  double error = 0.0;
};

TauValue tau(const BohrSpec& spec, const IntVector& h);

enum class Verdict { Inside, Outside, Undecidable };

struct Membership {
  Verdict verdict = Verdict::Outside;
  bool masked = false;
  /// min_i (radius_i - |tau_i(h) - center_i|): positive inside the window.
  double margin = 0.0;
  /// Bound on |computed margin - true margin|.
  double error = 0.0;
};

/// Three-way membership decision; escalates to 200-digit evaluation when the
/// double-precision margin is within its error bound.
Membership classify(const BohrSpec& spec, const ThickMask* mask, const IntVector& h);

/// Throws BoundaryUndecidable when classify cannot decide.
bool contains(const BohrSpec& spec, const ThickMask* mask, const IntVector& h);
bool contains(const BohrSpec& spec, const ThickMask* mask, const Traceless& a);

struct Member {
  IntVector h;
  double margin = 0.0;
};

struct EnumerationResult {
  std::vector<Member> members;
  std::vector<IntVector> undecidable;
  /// Points (members or not) with |margin| below the near-boundary threshold.
  std::vector<Member> near_boundary;
  std::size_t scanned = 0;
};

/// Streams every h with |h|_inf <= M in lexicographic order to visit(h, membership).
void for_each_in_box(const BohrSpec& spec, const ThickMask* mask, std::int64_t M,
                     const std::function<void(const IntVector&, const Membership&)>& visit);

EnumerationResult enumerate(const BohrSpec& spec, const ThickMask* mask, std::int64_t M,
                            double near_threshold = 1e-3);

/// Same frequencies, radii halved: members h1, h2 give h1 - h2 in the original set.
BohrSpec zero_symmetric_sub(const BohrSpec& spec);

}  // namespace bohrwalk
