// bohrwalk: experiment driver.  Each subcommand writes its outputs into the
// output directory (atomically) together with a <stem>.run.json record.

#include "bohrwalk/conjsearch.hpp"
#include "bohrwalk/errors.hpp"
#include "bohrwalk/io.hpp"
#include "bohrwalk/proximal.hpp"
#include "bohrwalk/spectral.hpp"
#include "bohrwalk/walk.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace bohrwalk;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoWitness = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += csv_field(fields[i]);
    }
    text_ += '\n';
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::vector<std::string> coord_header(const char* prefix, int n) {
  std::vector<std::string> h;
  for (int i = 1; i <= n; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

struct Globals {
  std::string out_dir = "out";
  int threads = 1;
  std::string stem;
};

// Collects outputs and the summary for the run record.
struct Run {
  const Globals& globals;
  CLI::App* command;
  std::string stem;
  json outputs = json::array();
  json summary = json::object();

  Run(const Globals& g, CLI::App* cmd) : globals(g), command(cmd), stem(g.stem.empty() ? cmd->get_name() : g.stem) {}

  fs::path path(const std::string& suffix) const { return fs::path(globals.out_dir) / (stem + suffix); }

  void write(const std::string& suffix, const std::string& content, const char* kind) {
    const fs::path p = path(suffix);
    io::write_atomically(p, content);
    outputs.push_back({{"path", p.string()}, {"kind", kind}});
  }
  void write_json(const std::string& suffix, const json& j) { write(suffix, j.dump(2) + "\n", "json"); }
  void write_csv(const std::string& suffix, const Csv& csv) { write(suffix, csv.str(), "csv"); }
};

json config_snapshot(const Globals& g, CLI::App* cmd) {
  json cfg{{"subcommand", cmd->get_name()}, {"out_dir", g.out_dir}, {"threads", g.threads}};
  for (const CLI::Option* opt : cmd->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& r = opt->results();
      cfg[key] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!opt->get_default_str().empty()) {
      cfg[key] = opt->get_default_str();
    }
  }
  return cfg;
}

IntMatrix read_matrix(const std::string& file) {
  const json j = io::read_json_file(file);
  return io::matrix_from_json(j.is_object() ? j.at("matrix") : j);
}

io::BohrDocument read_bohr(const std::string& file) {
  try {
    return io::bohr_from_json(io::read_json_file(file));
  } catch (const std::exception& e) {
    throw std::invalid_argument(file + ": " + e.what());
  }
}

// ---- proximal-check

struct ProximalArgs {
  int d = 2;
  std::string matrix;
  double tol = 1e-9;
};

int run_proximal(const ProximalArgs& a, Run& run) {
  const Unimodular g = a.matrix.empty() ? b_matrix<BigInt>(a.d) : Unimodular(read_matrix(a.matrix));
  const Adjoint ad = adjoint_matrix(g);
  const SpectrumReport r = is_proximal(ad, a.tol);
  json report = io::to_json(r);
  report["matrix"] = io::to_json(g.matrix());
  report["adjoint"] = io::to_json(ad.matrix());
  run.write_json(".json", report);

  Csv csv({"index", "modulus", "multiplicity"});
  for (std::size_t i = 0; i < r.moduli.size(); ++i) {
    csv.row({std::to_string(i), num(r.moduli[i]), std::to_string(r.multiplicities[i])});
  }
  run.write_csv(".csv", csv);
  run.summary = {{"proximal", r.proximal}, {"top_modulus", r.moduli.front()}, {"top_gap", r.top_gap}};
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

// ---- walk-equidist

struct WalkArgs {
  int d = 2;
  std::vector<int> ks{5, 10, 20, 40};
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int H = 0;  // 0: 3 for d = 2, 1 otherwise
  std::uint64_t Q = kMersenne61;
  std::string measure;
  std::string start;
};

int run_walk(WalkArgs a, Run& run) {
  if (a.H == 0) a.H = a.d == 2 ? 3 : 1;
  const FiniteSupportMeasure mu = a.measure.empty()
                                      ? FiniteSupportMeasure::uniform(elementary_generators<BigInt>(a.d))
                                      : io::group_measure_from_json(io::read_json_file(a.measure));
  if (mu.dim() != a.d) throw std::invalid_argument("measure: matrices are not " + std::to_string(a.d) + "x" + std::to_string(a.d));
  if (!is_prime(a.Q)) throw std::invalid_argument("Q: modulus must be prime");
  // The default start point is drawn from a stream that is disjoint from the walk's sample streams.
  const AtomicTorusMeasure start =
      a.start.empty() ? AtomicTorusMeasure::dirac(random_point(a.d, a.Q, derive_seed(a.seed, ~std::uint64_t{0})))
                      : io::torus_measure_from_json(io::read_json_file(a.start), a.d);

  const auto clouds = sample_walk_checkpoints(mu, a.ks, start, a.samples, a.seed, run.globals.threads);
  const int n = traceless_dim(a.d);

  std::vector<std::string> header{"k"};
  for (auto& h : coord_header("h", n)) header.push_back(h);
  header.insert(header.end(), {"re", "im", "modulus"});
  Csv coeffs(header);
  Csv decay({"k", "max_modulus", "samples", "bound_3_over_sqrt_n"});
  json per_k = json::array();

  for (const auto& cloud : clouds) {
    const WeylReport rep = weyl_report(cloud, a.H, run.globals.threads);
    for (std::size_t i = 0; i < rep.frequencies.size(); ++i) {
      std::vector<std::string> row{std::to_string(cloud.meta().k)};
      for (Eigen::Index j = 0; j < n; ++j) row.push_back(rep.frequencies[i][j].str());
      const auto c = rep.coefficients[i];
      row.insert(row.end(), {num(c.real()), num(c.imag()), num(std::abs(c))});
      coeffs.row(row);
    }
    const double slack = 3.0 / std::sqrt(static_cast<double>(a.samples));
    decay.row({std::to_string(cloud.meta().k), num(rep.max_modulus), std::to_string(a.samples), num(slack)});
    json arg = json::array();
    for (Eigen::Index j = 0; j < n; ++j) arg.push_back(io::to_json(rep.frequencies[rep.argmax][j]));
    per_k.push_back({{"k", cloud.meta().k}, {"max_modulus", rep.max_modulus}, {"argmax", arg}});
  }
  run.write_csv(".csv", coeffs);
  run.write_csv(".decay.csv", decay);
  json start_json = json::array();
  for (const auto& atom : start.atoms()) start_json.push_back({{"point", io::to_json(atom.x)}, {"w", io::to_json(atom.w)}});
  run.summary = {{"d", a.d}, {"Q", a.Q}, {"H", a.H}, {"samples", a.samples}, {"seed", a.seed},
                 {"start", start_json}, {"max_modulus_per_k", per_k}};
  run.write_json(".json", run.summary);
  std::cout << per_k.dump(2) << "\n";
  return kExitOk;
}

// ---- conjugacy-witness / charpoly-witness

struct WitnessArgs {
  std::string target;
  std::string poly;
  std::string bohr;
  int L = 8;
  std::string entry_bound = "1000000000000";
  std::size_t ball_cap = kDefaultBallCap;
};

int report_search(const SearchResult& r, const WitnessArgs& a, Run& run) {
  json stats{{"scanned", r.stats.scanned},
             {"pruned", r.stats.pruned},
             {"undecidable", r.stats.undecidable},
             {"depth", r.stats.depth},
             {"L", a.L}};
  json out{{"found", r.witness.has_value()}, {"stats", stats}};
  if (r.witness) out["witness"] = io::to_json(*r.witness);
  run.write_json(".json", out);
  run.summary = {{"found", r.witness.has_value()}, {"stats", stats}};
  if (r.witness) run.summary["word_length"] = r.witness->length;
  std::cout << out.dump(2) << "\n";
  if (!r.witness) {
    std::cerr << "no witness within word length " << a.L << "\n";
    return kExitNoWitness;
  }
  return kExitOk;
}

SearchOptions search_options(const WitnessArgs& a, int threads) {
  SearchOptions o;
  o.workers = threads;
  o.entry_bound = parse_integer(a.entry_bound);
  o.ball_cap = a.ball_cap;
  return o;
}

int run_conjugacy(const WitnessArgs& a, Run& run) {
  const Traceless c(read_matrix(a.target));
  const auto doc = read_bohr(a.bohr);
  const auto r = find_conjugate_in_bohr(c, doc.spec, doc.mask ? &*doc.mask : nullptr, a.L,
                                        search_options(a, run.globals.threads));
  return report_search(r, a, run);
}

int run_charpoly(const WitnessArgs& a, Run& run) {
  if (a.target.empty() == a.poly.empty()) throw std::invalid_argument("charpoly-witness: give exactly one of --target or --poly");
  const auto doc = read_bohr(a.bohr);
  const ThickMask* mask = doc.mask ? &*doc.mask : nullptr;
  const auto opts = search_options(a, run.globals.threads);
  SearchResult r;
  if (!a.target.empty()) {
    r = charpoly_witness(Traceless(read_matrix(a.target)), doc.spec, mask, a.L, opts);
  } else {
    std::vector<BigInt> coeffs;
    std::stringstream ss(a.poly);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_integer(item));
    r = charpoly_witness(IntPolynomial(std::move(coeffs)), doc.spec, mask, a.L, opts);
  }
  return report_search(r, a, run);
}

// ---- discriminant-cover

struct CoverArgs {
  std::string bohr;
  std::string alpha = "sqrt2";
  std::string eps = "0.1";
  std::int64_t M = 100000;
  std::int64_t t_min = -50;
  std::int64_t t_max = 50;
  std::size_t budget = CoverOptions{}.budget;
};

int run_cover(const CoverArgs& a, Run& run) {
  std::optional<io::BohrDocument> doc;
  if (!a.bohr.empty()) doc = read_bohr(a.bohr);
  const BohrSpec spec = doc ? doc->spec : BohrSpec::integers(Frequency::parse(a.alpha), parse_rational(a.eps));
  const ThickMask* mask = doc && doc->mask ? &*doc->mask : nullptr;
  CoverOptions opts;
  opts.workers = run.globals.threads;
  opts.budget = a.budget;
  const CoverageTable table = discriminant_cover(spec, mask, a.M, a.t_min, a.t_max, opts);

  Csv csv({"t", "found", "x", "y", "z", "exhausted"});
  for (const auto& row : table.rows) {
    if (row.found) {
      csv.row({std::to_string(row.t), "1", std::to_string(row.x), std::to_string(row.y), std::to_string(row.z), "0"});
    } else {
      csv.row({std::to_string(row.t), "0", "", "", "", row.exhausted ? "1" : "0"});
    }
  }
  run.write_csv(".csv", csv);
  const double frac = table.rows.empty() ? 0.0 : static_cast<double>(table.found()) / static_cast<double>(table.rows.size());
  run.summary = {{"M", table.M},
                 {"members", table.members},
                 {"undecidable", table.undecidable},
                 {"targets", table.rows.size()},
                 {"found", table.found()},
                 {"fraction_found", frac},
                 {"bohr", io::to_json(spec, mask)}};
  run.write_json(".json", run.summary);
  std::cout << "found " << table.found() << " of " << table.rows.size() << " targets\n";
  return table.found() == 0 ? kExitNoWitness : kExitOk;
}

// ---- spectral-atoms

struct SpectralArgs {
  std::string bohr;
  std::string alpha = "sqrt2";
  std::string eps = "1/8";
  bool halve = false;
  std::vector<std::int64_t> ks{2000};
  std::vector<std::int64_t> qs{1, 2, 3};
  std::string atoms = "1/2;1/3;2/5";
};

std::vector<RationalPoint> parse_atoms(const std::string& text, int rank) {
  std::vector<RationalPoint> out;
  const char sep = text.find(';') != std::string::npos || rank > 1 ? ';' : ',';
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    out.push_back(RationalPoint::parse(item));
    if (static_cast<int>(out.back().numerators.size()) != rank) {
      throw std::invalid_argument("atoms: point " + item + " does not have " + std::to_string(rank) + " coordinates");
    }
  }
  return out;
}

int run_spectral(const SpectralArgs& a, Run& run) {
  std::optional<io::BohrDocument> doc;
  if (!a.bohr.empty()) doc = read_bohr(a.bohr);
  const BohrSpec spec = doc ? doc->spec : BohrSpec::integers(Frequency::parse(a.alpha), parse_rational(a.eps));
  const RotationSystem sys = a.halve ? RotationSystem::of_bohr_set(spec) : RotationSystem(spec);
  const int threads = run.globals.threads;
  const auto atoms = parse_atoms(a.atoms, sys.rank());

  Csv folner({"k", "q", "average", "volume_squared"});
  json averages = json::array();
  const double v2 = sys.volume() * sys.volume();
  for (auto k : a.ks) {
    for (auto q : a.qs) {
      const double avg = folner_average(sys, k, q, threads);
      folner.row({std::to_string(k), std::to_string(q), num(avg), num(v2)});
      averages.push_back({{"k", k}, {"q", q}, {"average", avg}});
    }
  }
  Csv atom_csv({"k", "x0", "re", "im", "modulus"});
  json atom_json = json::array();
  for (auto k : a.ks) {
    for (const auto& x0 : atoms) {
      const AtomEstimate e = atom_mass(sys, x0, k, threads);
      atom_csv.row({std::to_string(k), x0.str(), num(e.value.real()), num(e.value.imag()), num(e.modulus)});
      atom_json.push_back({{"k", k}, {"x0", x0.str()}, {"modulus", e.modulus}});
    }
  }
  run.write_csv(".csv", folner);
  run.write_csv(".atoms.csv", atom_csv);
  run.summary = {{"volume", sys.volume()}, {"folner", averages}, {"atoms", atom_json}, {"bohr", io::to_json(sys.spec())}};
  run.write_json(".json", run.summary);
  std::cout << run.summary.dump(2) << "\n";
  return kExitOk;
}

// ---- bohr-enumerate

struct EnumerateArgs {
  std::string bohr;
  std::int64_t M = 10;
  double near = 1e-3;
};

int run_enumerate(const EnumerateArgs& a, Run& run) {
  const auto doc = read_bohr(a.bohr);
  const ThickMask* mask = doc.mask ? &*doc.mask : nullptr;
  const EnumerationResult res = enumerate(doc.spec, mask, a.M, a.near);
  const int r = doc.spec.rank();

  auto coords = [&](const IntVector& h) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < r; ++j) row.push_back(h(j).str());
    return row;
  };
  auto header = coord_header("h", r);
  header.push_back("margin");
  Csv members(header);
  for (const auto& m : res.members) {
    auto row = coords(m.h);
    row.push_back(num(m.margin));
    members.row(row);
  }
  header.back() = "status";
  header.push_back("margin");
  Csv boundary(header);
  for (const auto& m : res.near_boundary) {
    auto row = coords(m.h);
    row.push_back(m.margin > 0 ? "inside" : "outside");
    row.push_back(num(m.margin));
    boundary.row(row);
  }
  for (const auto& h : res.undecidable) {
    auto row = coords(h);
    row.push_back("undecidable");
    row.push_back("");
    boundary.row(row);
  }
  run.write_csv(".csv", members);
  run.write_csv(".boundary.csv", boundary);
  run.summary = {{"M", a.M},
                 {"scanned", res.scanned},
                 {"members", res.members.size()},
                 {"near_boundary", res.near_boundary.size()},
                 {"undecidable", res.undecidable.size()},
                 {"bohr", io::to_json(doc.spec, mask)}};
  run.write_json(".json", run.summary);
  std::cout << members.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjoint random walks, Bohr sets and witness searches"};
  app.set_version_flag("--version", BOHRWALK_VERSION);
  app.set_config("--config", "", "TOML config file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--out-dir", g.out_dir, "Output directory")->envname("BOHRWALK_OUT_DIR")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")
      ->envname("BOHRWALK_THREADS")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--stem", g.stem, "Output file stem (default: subcommand name)");

  ProximalArgs prox;
  auto* c_prox = app.add_subcommand("proximal-check", "Spectrum of Ad(g) and the proximality verdict");
  c_prox->add_option("--d", prox.d, "Dimension for the default matrix B_d")->check(CLI::Range(2, 12))->capture_default_str();
  c_prox->add_option("--matrix", prox.matrix, "JSON file with an SL_d(Z) matrix")->check(CLI::ExistingFile);
  c_prox->add_option("--tol", prox.tol, "Relative modulus tolerance")->capture_default_str();

  WalkArgs walk;
  auto* c_walk = app.add_subcommand("walk-equidist", "Weyl coefficients of mu^k * nu samples");
  c_walk->add_option("--d", walk.d)->check(CLI::Range(2, 8))->capture_default_str();
  c_walk->add_option("--k", walk.ks, "Step counts, increasing")->delimiter(',')->check(CLI::NonNegativeNumber)->capture_default_str();
  c_walk->add_option("--samples", walk.samples)->required()->check(CLI::PositiveNumber);
  c_walk->add_option("--seed", walk.seed)->required();
  c_walk->add_option("--H", walk.H, "Frequency radius (default 3 for d=2, 1 otherwise)")->check(CLI::Range(1, 64));
  c_walk->add_option("--Q", walk.Q, "Prime modulus")->capture_default_str();
  c_walk->add_option("--measure", walk.measure, "JSON measure on SL_d(Z)")->check(CLI::ExistingFile);
  c_walk->add_option("--start", walk.start, "JSON start measure on the torus")->check(CLI::ExistingFile);

  WitnessArgs conj;
  auto* c_conj = app.add_subcommand("conjugacy-witness", "Search g with g C g^-1 in a Bohr set");
  c_conj->add_option("--target", conj.target, "JSON traceless matrix C")->required()->check(CLI::ExistingFile);
  c_conj->add_option("--bohr", conj.bohr, "JSON Bohr set")->required()->check(CLI::ExistingFile);
  c_conj->add_option("--L", conj.L, "Word-length bound")->check(CLI::Range(0, 64))->capture_default_str();
  c_conj->add_option("--entry-bound", conj.entry_bound)->capture_default_str();
  c_conj->add_option("--ball-cap", conj.ball_cap)->capture_default_str();

  WitnessArgs cp;
  auto* c_cp = app.add_subcommand("charpoly-witness", "Search a Bohr-set matrix with a given characteristic polynomial");
  c_cp->add_option("--poly", cp.poly, "Monic coefficients, constant term first, e.g. -7,0,1");
  c_cp->add_option("--target", cp.target, "JSON traceless matrix realizing the polynomial")->check(CLI::ExistingFile);
  c_cp->add_option("--bohr", cp.bohr, "JSON Bohr set")->required()->check(CLI::ExistingFile);
  c_cp->add_option("--L", cp.L)->check(CLI::Range(0, 64))->capture_default_str();
  c_cp->add_option("--entry-bound", cp.entry_bound)->capture_default_str();
  c_cp->add_option("--ball-cap", cp.ball_cap)->capture_default_str();

  CoverArgs cover;
  auto* c_cover = app.add_subcommand("discriminant-cover", "Solve xy - z^2 = t with x, y, z in a Bohr set of Z");
  c_cover->add_option("--bohr", cover.bohr, "JSON Bohr set on Z (overrides --alpha/--eps)")->check(CLI::ExistingFile);
  c_cover->add_option("--alpha", cover.alpha)->capture_default_str();
  c_cover->add_option("--eps", cover.eps)->capture_default_str();
  c_cover->add_option("--M", cover.M)->check(CLI::Range(std::int64_t{1}, std::int64_t{1'000'000'000}))->capture_default_str();
  c_cover->add_option("--t-min", cover.t_min)->capture_default_str();
  c_cover->add_option("--t-max", cover.t_max)->capture_default_str();
  c_cover->add_option("--budget", cover.budget, "Divisibility tests per target")->capture_default_str();

  SpectralArgs spec;
  auto* c_spec = app.add_subcommand("spectral-atoms", "Følner and twisted averages of a rotation system");
  c_spec->add_option("--bohr", spec.bohr, "JSON Bohr set (overrides --alpha/--eps)")->check(CLI::ExistingFile);
  c_spec->add_option("--alpha", spec.alpha)->capture_default_str();
  c_spec->add_option("--eps", spec.eps, "Window radius of U0")->capture_default_str();
  c_spec->add_flag("--halve", spec.halve, "Use half the Bohr window as U0");
  c_spec->add_option("--k", spec.ks, "Box radii")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
  c_spec->add_option("--q", spec.qs)->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
  c_spec->add_option("--atoms", spec.atoms, "Rational points, ';'-separated (',' also separates on Z)")->capture_default_str();

  EnumerateArgs en;
  auto* c_en = app.add_subcommand("bohr-enumerate", "List Bohr-set members in a box");
  c_en->add_option("--bohr", en.bohr)->required()->check(CLI::ExistingFile);
  c_en->add_option("--M", en.M, "Box radius")->check(CLI::Range(std::int64_t{0}, std::int64_t{1'000'000}))->capture_default_str();
  c_en->add_option("--near", en.near, "Near-boundary threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Run run(g, cmd);
  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitError;
  try {
    if (cmd == c_prox) code = run_proximal(prox, run);
    else if (cmd == c_walk) code = run_walk(walk, run);
    else if (cmd == c_conj) code = run_conjugacy(conj, run);
    else if (cmd == c_cp) code = run_charpoly(cp, run);
    else if (cmd == c_cover) code = run_cover(cover, run);
    else if (cmd == c_spec) code = run_spectral(spec, run);
    else if (cmd == c_en) code = run_enumerate(en, run);
  } catch (const std::exception& e) {
    std::cerr << cmd->get_name() << ": " << e.what() << "\n";
    return kExitError;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json argv_json = json::array();
  for (int i = 0; i < argc; ++i) argv_json.push_back(argv[i]);
  const json record{{"config", config_snapshot(g, cmd)},
                    {"argv", argv_json},
                    {"versions", {{"bohrwalk", BOHRWALK_VERSION}, {"compiler", __VERSION__}}},
                    {"wall_clock_seconds", seconds},
                    {"exit_code", code},
                    {"outputs", run.outputs},
                    {"summary", run.summary}};
  try {
    io::write_atomically(run.path(".run.json"), record.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "run record: " << e.what() << "\n";
    return kExitError;
  }
  return code;
}
