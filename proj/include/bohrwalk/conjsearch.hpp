#pragma once

// Witness searches: for a target C, scan the SL_d(Z)-orbit A = g C g^{-1} over
// a word-length ball and stop at the first A inside a Bohr set; for the
// discriminant form xy - z^2, scan members of a Bohr set in Z.

#include "bohrwalk/bohr.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

namespace bohrwalk {

inline constexpr std::size_t kDefaultBallCap = 20'000'000;

struct BallElement {
  Unimodular g;
  int length = 0;
  std::vector<int> word;  // generator indices, g = gens[word[0]] * ... * gens[word.back()]
};

/// Word-length ball in the Cayley graph, in shortlex order of minimal words.
class GroupBall {
 public:
  GroupBall(std::vector<Unimodular> generators, int radius, std::vector<BallElement> elements)
      : generators_(std::move(generators)), radius_(radius), elements_(std::move(elements)) {}

  const std::vector<Unimodular>& generators() const { return generators_; }
  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<BallElement>& elements() const { return elements_; }

 private:
  std::vector<Unimodular> generators_;
  int radius_;
  std::vector<BallElement> elements_;
};

/// BFS by right multiplication; throws SizeCapExceeded past `cap` elements.
GroupBall ball(const std::vector<Unimodular>& generators, int L, std::size_t cap = kDefaultBallCap);

/// Breadth-first spheres of the ball, one layer at a time.  For symmetric
/// generating sets only three layers are kept for deduplication.
class BallLayers {
  using KeySet = std::unordered_set<MatrixKey, MatrixKeyHash>;

 public:
  explicit BallLayers(std::vector<Unimodular> generators, std::size_t cap = kDefaultBallCap);

  int radius() const { return radius_; }
  const std::vector<BallElement>& sphere() const { return current_; }
  std::size_t total() const { return total_; }
  /// Builds the next sphere; false once it is empty.
  bool advance();

 private:
  std::vector<Unimodular> gens_;
  bool symmetric_;
  std::size_t cap_;
  int radius_ = 0;
  std::size_t total_ = 1;
  std::vector<BallElement> current_;
  KeySet previous_keys_, current_keys_;
  KeySet all_keys_;  // only for non-symmetric generating sets
};

struct SearchOptions {
  int workers = 1;
  /// Conjugates with an entry above this bound are skipped.
  BigInt entry_bound = BigInt(1'000'000'000'000LL);
  std::size_t ball_cap = kDefaultBallCap;
  /// Generators of the scanned ball; empty means elementary_generators(d).
  std::vector<Unimodular> generators;
};

struct Witness {
  Unimodular g;
  Traceless a;  // member of B
  Traceless c;  // target, c = g^{-1} a g
  int length = 0;
  std::vector<int> word;
  TauValue tau_value;
  Membership membership;
};

struct SearchStats {
  std::size_t scanned = 0;
  std::size_t pruned = 0;
  std::size_t undecidable = 0;
  int depth = 0;  // deepest sphere scanned
};

struct SearchResult {
  std::optional<Witness> witness;
  SearchStats stats;
};

/// First g in shortlex order with g C g^{-1} in B; the witness is re-verified exactly.
SearchResult find_conjugate_in_bohr(const Traceless& c, const BohrSpec& spec, const ThickMask* mask, int L,
                                    const SearchOptions& options = {});

/// Realizes p by its traceless companion matrix and searches its orbit.
SearchResult charpoly_witness(const IntPolynomial& p, const BohrSpec& spec, const ThickMask* mask, int L,
                              const SearchOptions& options = {});
SearchResult charpoly_witness(const Traceless& c, const BohrSpec& spec, const ThickMask* mask, int L,
                              const SearchOptions& options = {});

struct CoverageRow {
  std::int64_t t = 0;
  bool found = false;
  std::int64_t x = 0, y = 0, z = 0;
  /// False when the per-target work budget ran out before every z was tried.
  bool exhausted = false;
};

struct CoverageTable {
  std::int64_t M = 0;
  std::size_t members = 0;
  std::size_t undecidable = 0;
  std::vector<CoverageRow> rows;

  std::size_t found() const;
};

struct CoverOptions {
  int workers = 1;
  /// Divisibility tests per target before giving up ("not found <= M").
  std::size_t budget = 50'000'000;
};

/// For each t in [t_min, t_max], searches x, y, z in B with |x|,|y|,|z| <= M and xy - z^2 = t.
CoverageTable discriminant_cover(const BohrSpec& spec, const ThickMask* mask, std::int64_t M, std::int64_t t_min,
                                 std::int64_t t_max, const CoverOptions& options = {});

}  // namespace bohrwalk
