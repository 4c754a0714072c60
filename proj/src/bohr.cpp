#include "bohrwalk/bohr.hpp"

#include "bohrwalk/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bohrwalk {
namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

HighFloat high_of(const BigInt& v) {
  if (fits_int64(v)) return HighFloat(v.convert_to<std::int64_t>());
  return HighFloat(v.str());
}

HighFloat high_of(const Rational& r) { return high_of(numerator(r)) / high_of(denominator(r)); }

std::string strip(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    // UTF-8 square root sign
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x9A) {
      s += "sqrt";
      i += 2;
      continue;
    }
    s.push_back(static_cast<char>(std::tolower(c)));
  }
  return s;
}

// Splits "1/2+sqrt3-2*sqrt(5)" into signed terms; exponent signs stay attached.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool sign = (c == '+' || c == '-') && depth == 0 && !cur.empty() && cur.back() != 'e' &&
                      cur.back() != '*';
    if (sign) {
      terms.push_back(cur);
      cur.clear();
    }
    cur.push_back(c);
  }
  if (!cur.empty()) terms.push_back(cur);
  return terms;
}

// Square-free part: m = s^2 * core.
std::pair<long, long> square_free(long m) {
  long s = 1;
  for (long p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      s *= p;
    }
  }
  return {s, m};
}

}  // namespace

Frequency Frequency::rational(Rational r) {
  Frequency f;
  f.a_ = std::move(r);
  return f;
}

Frequency Frequency::surd(Rational rational_part, Rational coefficient, long radicand) {
  if (radicand < 0) throw std::invalid_argument("Frequency: negative radicand");
  Frequency f;
  f.a_ = std::move(rational_part);
  if (radicand == 0 || coefficient == 0) return f;
  auto [s, core] = square_free(radicand);
  coefficient *= Rational(s);
  if (core == 1) {
    f.a_ += coefficient;
    return f;
  }
  f.b_ = std::move(coefficient);
  f.m_ = core;
  return f;
}

Frequency Frequency::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("Frequency: empty expression");
  Rational a(0), b(0);
  long m = 0;
  for (const auto& term : split_terms(s)) {
    const auto pos = term.find("sqrt");
    if (pos == std::string::npos) {
      a += parse_rational(term);
      continue;
    }
    std::string coef = term.substr(0, pos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    Rational c(1);
    if (coef == "-") {
      c = -1;
    } else if (!coef.empty() && coef != "+") {
      c = parse_rational(coef);
    }
    std::string rad = term.substr(pos + 4);
    if (!rad.empty() && rad.front() == '(') {
      if (rad.back() != ')') throw std::invalid_argument("Frequency: unbalanced parentheses in '" + s + "'");
      rad = rad.substr(1, rad.size() - 2);
    }
    long r = 0;
    std::size_t used = 0;
    try {
      r = std::stol(rad, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("Frequency: bad radicand in '" + s + "'");
    }
    if (used != rad.size()) throw std::invalid_argument("Frequency: bad radicand in '" + s + "'");
    Frequency part = surd(Rational(0), c, r);
    a += part.a_;
    if (part.b_ != 0) {
      if (m != 0 && m != part.m_) throw std::invalid_argument("Frequency: at most one distinct radicand");
      m = part.m_;
      b += part.b_;
    }
  }
  Frequency f;
  f.a_ = a;
  if (b != 0) {
    f.b_ = b;
    f.m_ = m;
  }
  return f;
}

HighFloat Frequency::to_high() const {
  HighFloat v = high_of(a_);
  if (b_ != 0) v += high_of(b_) * boost::multiprecision::sqrt(HighFloat(m_));
  return v;
}

double Frequency::to_double() const { return to_high().convert_to<double>(); }

std::string Frequency::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_.str();
    return os.str();
  }
  if (a_ != 0) os << a_.str() << (b_ > 0 ? "+" : "");
  if (b_ == -1) {
    os << "-";
  } else if (b_ != 1) {
    os << b_.str() << "*";
  }
  os << "sqrt(" << m_ << ")";
  return os.str();
}

BohrSpec::BohrSpec(Ambient ambient, int d, std::vector<std::vector<Frequency>> frequencies, Window window)
    : ambient_(ambient), d_(d), rows_(std::move(frequencies)), window_(std::move(window)) {
  if (ambient_ == Ambient::Lattice && d_ < 2) throw std::invalid_argument("BohrSpec: d must be at least 2");
  if (ambient_ == Ambient::Integers) d_ = 1;
  if (rows_.empty()) throw std::invalid_argument("BohrSpec: frequencies: need at least one row");
  const int r = rank();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& row = rows_[i];
    if (static_cast<int>(row.size()) != r) {
      throw std::invalid_argument("BohrSpec: frequencies[" + std::to_string(i) + "]: expected " +
                                  std::to_string(r) + " entries");
    }
    bool irrational = false;
    for (const auto& f : row) irrational = irrational || f.irrational();
    if (!irrational) {
      throw std::invalid_argument("BohrSpec: frequencies[" + std::to_string(i) +
                                  "]: row needs an irrational (surd) entry for a dense image");
    }
  }
  if (window_.radii.size() != rows_.size() || window_.centers.size() != rows_.size()) {
    throw std::invalid_argument("BohrSpec: window: need one center and radius per frequency row");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (window_.radii[i] <= 0 || window_.radii[i] > Rational(1, 4)) {
      throw std::invalid_argument("BohrSpec: window.radii[" + std::to_string(i) + "] must lie in (0, 1/4]");
    }
    Rational& c = window_.centers[i];
    c -= Rational(BigInt(numerator(c) / denominator(c)));
    if (c < 0) c += 1;
  }

  for (const auto& row : rows_) {
    std::vector<double> fd;
    std::vector<HighFloat> fh;
    for (const auto& f : row) {
      fh.push_back(f.to_high());
      fd.push_back(fh.back().convert_to<double>());
    }
    f_double_.push_back(std::move(fd));
    f_high_.push_back(std::move(fh));
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    c_high_.push_back(high_of(window_.centers[i]));
    r_high_.push_back(high_of(window_.radii[i]));
    c_double_.push_back(c_high_.back().convert_to<double>());
    r_double_.push_back(r_high_.back().convert_to<double>());
  }
}

BohrSpec BohrSpec::integers(Frequency alpha, Rational radius) {
  return BohrSpec(Ambient::Integers, 1, {{std::move(alpha)}}, Window{{Rational(0)}, {std::move(radius)}});
}

bool BohrSpec::zero_centered() const {
  for (const auto& c : window_.centers)
    if (c != 0) return false;
  return true;
}

Rational BohrSpec::volume() const {
  Rational v(1);
  for (const auto& r : window_.radii) v *= 2 * r;
  return v;
}

IntVector BohrSpec::element(const Traceless& a) const {
  if (ambient_ != Ambient::Lattice) throw std::invalid_argument("BohrSpec: matrix given for a Z ambient");
  if (a.dim() != d_) throw std::invalid_argument("BohrSpec: matrix dimension mismatch");
  return coords_of(a).vector();
}

bool Box::contains(const IntVector& h) const {
  if (lo.size() != static_cast<std::size_t>(h.size()) || hi.size() != lo.size()) {
    throw std::invalid_argument("Box: dimension mismatch");
  }
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (h(i) < lo[i] || h(i) > hi[i]) return false;
  return true;
}

bool ThickMask::excludes(const IntVector& h) const {
  for (const auto& b : excluded)
    if (b.contains(h)) return true;
  return false;
}

namespace {

void check_rank(const BohrSpec& spec, const IntVector& h) {
  if (h.size() != spec.rank()) {
    throw std::invalid_argument("Bohr: element has " + std::to_string(h.size()) + " coordinates, ambient rank is " +
                                std::to_string(spec.rank()));
  }
}

struct HighEval {
  std::vector<HighFloat> frac;
  double error = 0.0;
};

HighEval evaluate_high(const BohrSpec& spec, const IntVector& h) {
  HighEval out;
  double scale = 1.0;
  std::vector<HighFloat> hh;
  for (Eigen::Index j = 0; j < h.size(); ++j) hh.push_back(high_of(h(j)));
  for (int i = 0; i < spec.n(); ++i) {
    HighFloat s = 0;
    double absum = 0;
    for (int j = 0; j < spec.rank(); ++j) {
      s += spec.frequencies_high()[i][j] * hh[j];
      absum += std::abs(spec.frequencies_double()[i][j]) * std::abs(hh[j].convert_to<double>());
    }
    scale = std::max(scale, absum + 1);
    out.frac.push_back(s - boost::multiprecision::floor(s));
  }
  // 200 significant digits, a few operations per coordinate.
  out.error = 1e-180 * scale;
  return out;
}

}  // namespace

TauValue tau(const BohrSpec& spec, const IntVector& h) {
  check_rank(spec, h);
  HighEval e = evaluate_high(spec, h);
  TauValue t;
  for (const auto& f : e.frac) {
    double v = f.convert_to<double>();
    if (v >= 1.0) v = 0.0;
    t.coords.push_back(v);
  }
  t.error = kUnit + e.error;
  return t;
}

Membership classify(const BohrSpec& spec, const ThickMask* mask, const IntVector& h) {
  check_rank(spec, h);
  Membership m;
  if (mask && mask->excludes(h)) {
    m.masked = true;
    m.verdict = Verdict::Outside;
    m.margin = -std::numeric_limits<double>::infinity();
    return m;
  }

  // Tier 1: doubles with an explicit rounding bound.
  bool small = true;
  std::vector<double> hd(static_cast<std::size_t>(h.size()));
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    if (boost::multiprecision::abs(h(j)) > BigInt(std::int64_t{1} << 50)) {
      small = false;
      break;
    }
    hd[j] = h(j).convert_to<double>();
  }
  if (small) {
    double margin = std::numeric_limits<double>::infinity();
    double error = 0.0;
    bool usable = true;
    for (int i = 0; i < spec.n() && usable; ++i) {
      double s = 0, absum = 0;
      for (int j = 0; j < spec.rank(); ++j) {
        const double term = spec.frequencies_double()[i][j] * hd[j];
        s += term;
        absum += std::abs(term);
      }
      if (absum > 0x1p50) {
        usable = false;
        break;
      }
      const double t = s - std::floor(s);
      double delta = t - spec.centers_double()[i];
      delta -= std::round(delta);
      margin = std::min(margin, spec.radii_double()[i] - std::abs(delta));
      error = std::max(error, 2 * ((spec.rank() + 3) * kUnit * absum + 8 * kUnit));
    }
    if (usable && (margin > error || margin < -error)) {
      m.margin = margin;
      m.error = error;
      m.verdict = margin > 0 ? Verdict::Inside : Verdict::Outside;
      return m;
    }
  }

  // Tier 2: 200 significant digits.
  HighEval e = evaluate_high(spec, h);
  HighFloat margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.n(); ++i) {
    HighFloat delta = e.frac[i] - spec.centers_high()[i];
    delta -= boost::multiprecision::round(delta);
    HighFloat mi = spec.radii_high()[i] - boost::multiprecision::abs(delta);
    if (mi < margin) margin = mi;
  }
  m.margin = margin.convert_to<double>();
  m.error = e.error;
  if (margin > e.error) {
    m.verdict = Verdict::Inside;
  } else if (margin < -e.error) {
    m.verdict = Verdict::Outside;
  } else {
    m.verdict = Verdict::Undecidable;
  }
  return m;
}

bool contains(const BohrSpec& spec, const ThickMask* mask, const IntVector& h) {
  const Membership m = classify(spec, mask, h);
  if (m.verdict == Verdict::Undecidable) {
    throw BoundaryUndecidable("Bohr membership: tau(h) lies on the window boundary within evaluation error");
  }
  return m.verdict == Verdict::Inside;
}

bool contains(const BohrSpec& spec, const ThickMask* mask, const Traceless& a) {
  return contains(spec, mask, spec.element(a));
}

void for_each_in_box(const BohrSpec& spec, const ThickMask* mask, std::int64_t M,
                     const std::function<void(const IntVector&, const Membership&)>& visit) {
  if (M < 0) throw std::invalid_argument("enumerate: M must be non-negative");
  const int r = spec.rank();
  std::vector<std::int64_t> h(static_cast<std::size_t>(r), -M);
  IntVector v(r);
  for (;;) {
    for (int i = 0; i < r; ++i) v(i) = BigInt(h[i]);
    visit(v, classify(spec, mask, v));
    int i = r - 1;
    while (i >= 0 && h[i] == M) h[i--] = -M;
    if (i < 0) break;
    ++h[i];
  }
}

EnumerationResult enumerate(const BohrSpec& spec, const ThickMask* mask, std::int64_t M, double near_threshold) {
  EnumerationResult out;
  for_each_in_box(spec, mask, M, [&](const IntVector& h, const Membership& m) {
    ++out.scanned;
    if (m.verdict == Verdict::Inside) out.members.push_back({h, m.margin});
    if (m.verdict == Verdict::Undecidable) out.undecidable.push_back(h);
    if (!m.masked && std::abs(m.margin) < near_threshold) out.near_boundary.push_back({h, m.margin});
  });
  return out;
}

BohrSpec zero_symmetric_sub(const BohrSpec& spec) {
  if (!spec.zero_centered()) throw std::invalid_argument("zero_symmetric_sub: window is not centered at 0");
  Window w = spec.window();
  for (auto& r : w.radii) r /= 2;
  return BohrSpec(spec.ambient(), spec.d(), spec.frequencies(), std::move(w));
}

}  // namespace bohrwalk
