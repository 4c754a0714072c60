#pragma once

// JSON encodings.  Integers are JSON numbers when they fit in 64 bits and
// decimal strings otherwise; rationals are strings "p/q" (numbers accepted on
// input); matrices are arrays of rows; polynomials are coefficient arrays,
// lowest degree first.

#include "bohrwalk/conjsearch.hpp"
#include "bohrwalk/proximal.hpp"
#include "bohrwalk/walk.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace bohrwalk::io {

using nlohmann::json;

json to_json(const BigInt& v);
BigInt bigint_from_json(const json& j);
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);
json to_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const json& j);

json to_json(const TorusPoint& x);
TorusPoint point_from_json(const json& j);

json to_json(const SpectrumReport& r);

/// {"atoms": [{"matrix": [[...]], "p": "1/4"}, ...]}
FiniteSupportMeasure group_measure_from_json(const json& j);
json to_json(const FiniteSupportMeasure& mu);
/// {"Q": ..., "atoms": [{"residues": [...], "w": "1/2"}, ...]} or a single point {"Q", "residues"}.
AtomicTorusMeasure torus_measure_from_json(const json& j, int d);

struct BohrDocument {
  BohrSpec spec;
  std::optional<ThickMask> mask;
};
/// {"ambient": "lattice"|"integers", "d", "frequencies": [["sqrt2", ...]], "window": {"centers", "radii"}, "mask"}
BohrDocument bohr_from_json(const json& j);
json to_json(const BohrSpec& spec, const ThickMask* mask = nullptr);

json to_json(const Witness& w);

json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over the target.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace bohrwalk::io
