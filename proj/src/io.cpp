#include "bohrwalk/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bohrwalk::io {
namespace {

std::invalid_argument field_error(const std::string& field, const std::string& what) {
  return std::invalid_argument(field + ": " + what);
}

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) throw field_error(field, "missing field");
  return j.at(field);
}

}  // namespace

json to_json(const BigInt& v) {
  if (fits_int64(v)) return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(bigint_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  // dump() gives the shortest decimal that round-trips, so 0.1 reads as 1/10
  if (j.is_number_float()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix: row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = bigint_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json to_json(const IntPolynomial& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(to_json(c));
  return a;
}

IntPolynomial polynomial_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial: expected a coefficient array");
  std::vector<BigInt> c;
  for (const auto& v : j) c.push_back(bigint_from_json(v));
  return IntPolynomial(std::move(c));
}

json to_json(const TorusPoint& x) {
  return json{{"d", x.dim()}, {"Q", x.modulus()}, {"residues", x.residues()}};
}

TorusPoint point_from_json(const json& j) {
  const auto q = require(j, "Q").get<std::uint64_t>();
  auto residues = require(j, "residues").get<std::vector<std::uint64_t>>();
  int d = 2;
  while (traceless_dim(d) < static_cast<int>(residues.size())) ++d;
  if (j.contains("d")) d = j.at("d").get<int>();
  if (!is_prime(q)) throw field_error("Q", "modulus must be prime");
  return TorusPoint(d, q, std::move(residues));
}

json to_json(const SpectrumReport& r) {
  json poly = json::array();
  for (const auto& c : r.char_poly) poly.push_back(to_json(c));
  return json{{"dimension", r.dimension},  {"moduli", r.moduli},     {"multiplicities", r.multiplicities},
              {"top_gap", r.top_gap},      {"proximal", r.proximal}, {"char_poly", poly}};
}

FiniteSupportMeasure group_measure_from_json(const json& j) {
  const auto& atoms = require(j, "atoms");
  if (!atoms.is_array()) throw field_error("atoms", "expected an array");
  std::vector<GroupAtom> out;
  for (const auto& a : atoms) out.push_back({Unimodular(matrix_from_json(require(a, "matrix"))), rational_from_json(require(a, "p"))});
  return FiniteSupportMeasure(std::move(out));
}

json to_json(const FiniteSupportMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"matrix", to_json(a.g.matrix())}, {"p", to_json(a.p)}});
  return json{{"atoms", atoms}};
}

AtomicTorusMeasure torus_measure_from_json(const json& j, int d) {
  const auto q = require(j, "Q").get<std::uint64_t>();
  if (!is_prime(q)) throw field_error("Q", "modulus must be prime");
  if (j.contains("residues")) {
    return AtomicTorusMeasure::dirac(TorusPoint(d, q, j.at("residues").get<std::vector<std::uint64_t>>()));
  }
  std::vector<TorusAtom> atoms;
  for (const auto& a : require(j, "atoms")) {
    atoms.push_back({TorusPoint(d, q, require(a, "residues").get<std::vector<std::uint64_t>>()),
                     rational_from_json(require(a, "w"))});
  }
  return AtomicTorusMeasure(std::move(atoms));
}

BohrDocument bohr_from_json(const json& j) {
  const std::string ambient = require(j, "ambient").get<std::string>();
  Ambient amb;
  if (ambient == "lattice" || ambient == "Lambda") {
    amb = Ambient::Lattice;
  } else if (ambient == "integers" || ambient == "Z") {
    amb = Ambient::Integers;
  } else {
    throw field_error("ambient", "expected \"lattice\" or \"integers\", got \"" + ambient + "\"");
  }
  const int d = amb == Ambient::Lattice ? require(j, "d").get<int>() : 1;

  std::vector<std::vector<Frequency>> rows;
  const auto& freqs = require(j, "frequencies");
  if (!freqs.is_array()) throw field_error("frequencies", "expected an array of rows");
  for (const auto& row : freqs) {
    std::vector<Frequency> r;
    auto parse_one = [](const json& v) {
      if (v.is_string()) return Frequency::parse(v.get<std::string>());
      return Frequency::rational(rational_from_json(v));
    };
    if (row.is_array()) {
      for (const auto& v : row) r.push_back(parse_one(v));
    } else {
      r.push_back(parse_one(row));
    }
    rows.push_back(std::move(r));
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size()) {
    throw field_error("n", "does not match the number of frequency rows");
  }

  Window w;
  const auto& win = require(j, "window");
  for (const auto& r : require(win, "radii")) w.radii.push_back(rational_from_json(r));
  if (win.contains("centers")) {
    for (const auto& c : win.at("centers")) w.centers.push_back(rational_from_json(c));
  } else {
    w.centers.assign(w.radii.size(), Rational(0));
  }

  BohrDocument doc{BohrSpec(amb, d, std::move(rows), std::move(w)), std::nullopt};
  if (j.contains("mask") && !j.at("mask").is_null()) {
    ThickMask mask;
    for (const auto& b : j.at("mask")) {
      Box box;
      for (const auto& v : require(b, "lo")) box.lo.push_back(bigint_from_json(v));
      for (const auto& v : require(b, "hi")) box.hi.push_back(bigint_from_json(v));
      if (box.lo.size() != static_cast<std::size_t>(doc.spec.rank()) || box.hi.size() != box.lo.size()) {
        throw field_error("mask", "box bounds must have one entry per ambient coordinate");
      }
      mask.excluded.push_back(std::move(box));
    }
    doc.mask = std::move(mask);
  }
  return doc;
}

json to_json(const BohrSpec& spec, const ThickMask* mask) {
  json rows = json::array();
  for (const auto& row : spec.frequencies()) {
    json r = json::array();
    for (const auto& f : row) r.push_back(f.str());
    rows.push_back(std::move(r));
  }
  json centers = json::array(), radii = json::array();
  for (const auto& c : spec.window().centers) centers.push_back(to_json(c));
  for (const auto& r : spec.window().radii) radii.push_back(to_json(r));
  json out{{"ambient", spec.ambient() == Ambient::Lattice ? "lattice" : "integers"},
           {"d", spec.d()},
           {"n", spec.n()},
           {"frequencies", rows},
           {"window", {{"centers", centers}, {"radii", radii}}},
           {"assumptions", "distinct surd frequencies are taken to be linearly independent over Q (dense image); not verified"}};
  if (mask) {
    json boxes = json::array();
    for (const auto& b : mask->excluded) {
      json lo = json::array(), hi = json::array();
      for (const auto& v : b.lo) lo.push_back(to_json(v));
      for (const auto& v : b.hi) hi.push_back(to_json(v));
      boxes.push_back({{"lo", lo}, {"hi", hi}});
    }
    out["mask"] = boxes;
  }
  return out;
}

json to_json(const Witness& w) {
  return json{{"g", to_json(w.g.matrix())},
              {"A", to_json(w.a.matrix())},
              {"C", to_json(w.c.matrix())},
              {"word_length", w.length},
              {"word", w.word},
              {"tau", w.tau_value.coords},
              {"tau_error", w.tau_value.error},
              {"margin", w.membership.margin},
              {"margin_error", w.membership.error},
              {"verified", true}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bohrwalk::io
