#include "bohrwalk/conjsearch.hpp"

#include "bohrwalk/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace bohrwalk {
namespace {

bool is_symmetric(const std::vector<Unimodular>& gens) {
  std::unordered_set<MatrixKey, MatrixKeyHash> keys;
  for (const auto& g : gens) keys.insert(MatrixKey::of(g.matrix()));
  for (const auto& g : gens)
    if (!keys.count(MatrixKey::of(g.inverse().matrix()))) return false;
  return true;
}

bool exceeds(const Traceless& a, const BigInt& bound) {
  const auto& m = a.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (boost::multiprecision::abs(m(i, j)) > bound) return true;
  return false;
}

constexpr std::size_t kScanBlock = 512;
constexpr std::size_t kSpotCheckStride = 997;

struct BlockScan {
  std::size_t hit = std::numeric_limits<std::size_t>::max();
  Membership membership;
  SearchStats stats;  // counted up to and including the hit
};

}  // namespace

BallLayers::BallLayers(std::vector<Unimodular> generators, std::size_t cap)
    : gens_(std::move(generators)), cap_(cap) {
  if (gens_.empty()) throw std::invalid_argument("ball: no generators");
  symmetric_ = is_symmetric(gens_);
  Unimodular id = Unimodular::identity(gens_.front().dim());
  for (const auto& g : gens_)
    if (g.dim() != id.dim()) throw std::invalid_argument("ball: generators of mixed dimension");
  current_keys_.insert(MatrixKey::of(id.matrix()));
  if (!symmetric_) all_keys_ = current_keys_;
  current_.push_back({std::move(id), 0, {}});
}

bool BallLayers::advance() {
  std::vector<BallElement> next;
  KeySet next_keys;
  for (const auto& e : current_) {
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      Unimodular h = e.g * gens_[gi];
      MatrixKey key = MatrixKey::of(h.matrix());
      if (symmetric_) {
        if (previous_keys_.count(key) || current_keys_.count(key) || next_keys.count(key)) continue;
        next_keys.insert(std::move(key));
      } else {
        if (!all_keys_.insert(std::move(key)).second) continue;
      }
      if (total_ + next.size() >= cap_) throw SizeCapExceeded("ball: element cap exceeded", total_ + next.size() + 1);
      std::vector<int> word = e.word;
      word.push_back(static_cast<int>(gi));
      next.push_back({std::move(h), radius_ + 1, std::move(word)});
    }
  }
  if (next.empty()) return false;
  ++radius_;
  total_ += next.size();
  current_ = std::move(next);
  if (symmetric_) {
    previous_keys_ = std::move(current_keys_);
    current_keys_ = std::move(next_keys);
  }
  return true;
}

GroupBall ball(const std::vector<Unimodular>& generators, int L, std::size_t cap) {
  if (L < 0) throw std::invalid_argument("ball: radius must be non-negative");
  BallLayers layers(generators, cap);
  std::vector<BallElement> all = layers.sphere();
  while (layers.radius() < L && layers.advance()) {
    for (const auto& e : layers.sphere()) all.push_back(e);
  }
  return GroupBall(generators, L, std::move(all));
}

SearchResult find_conjugate_in_bohr(const Traceless& c, const BohrSpec& spec, const ThickMask* mask, int L,
                                    const SearchOptions& options) {
  if (L < 0) throw std::invalid_argument("find_conjugate_in_bohr: L must be non-negative");
  if (spec.ambient() != Ambient::Lattice || spec.d() != c.dim()) {
    throw std::invalid_argument("find_conjugate_in_bohr: Bohr set must live on Mat_d^0(Z) with matching d");
  }
  if (!spec.zero_centered()) throw std::invalid_argument("find_conjugate_in_bohr: Bohr set must be Bohr-zero");

  std::vector<Unimodular> gens = options.generators;
  if (gens.empty()) gens = elementary_generators<BigInt>(c.dim());
  BallLayers layers(std::move(gens), options.ball_cap);
  const IntPolynomial target_poly = char_poly<BigInt>(c.matrix());

  SearchResult result;
  for (;;) {
    const auto& sphere = layers.sphere();
    const std::size_t blocks = (sphere.size() + kScanBlock - 1) / kScanBlock;
    std::vector<BlockScan> scans(blocks);
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};

    detail::parallel_blocks(blocks, options.workers, [&](std::size_t b) {
      if (b > best.load()) return;
      BlockScan& scan = scans[b];
      const std::size_t last = std::min(sphere.size(), (b + 1) * kScanBlock);
      for (std::size_t i = b * kScanBlock; i < last; ++i) {
        const auto& e = sphere[i];
        Traceless a(Matrix<BigInt>(e.g.matrix() * c.matrix() * e.g.inverse().matrix()));
        ++scan.stats.scanned;
        if (i % kSpotCheckStride == 0 && !(char_poly<BigInt>(a.matrix()) == target_poly)) {
          throw std::logic_error("find_conjugate_in_bohr: conjugation changed the characteristic polynomial");
        }
        if (exceeds(a, options.entry_bound)) {
          ++scan.stats.pruned;
          continue;
        }
        Membership m = classify(spec, mask, spec.element(a));
        if (m.verdict == Verdict::Undecidable) ++scan.stats.undecidable;
        if (m.verdict == Verdict::Inside) {
          scan.hit = i;
          scan.membership = m;
          std::size_t cur = best.load();
          while (b < cur && !best.compare_exchange_weak(cur, b)) {
          }
          return;
        }
      }
    });

    result.stats.depth = layers.radius();
    // Blocks after the first hit may or may not have run; they are not counted.
    for (const auto& scan : scans) {
      result.stats.scanned += scan.stats.scanned;
      result.stats.pruned += scan.stats.pruned;
      result.stats.undecidable += scan.stats.undecidable;
      if (scan.hit != std::numeric_limits<std::size_t>::max()) {
        const auto& e = sphere[scan.hit];
        Traceless a(Matrix<BigInt>(e.g.matrix() * c.matrix() * e.g.inverse().matrix()));
        if (!(conjugate(e.g, a) == c)) throw std::logic_error("find_conjugate_in_bohr: witness failed re-verification");
        if (!contains(spec, mask, a)) throw std::logic_error("find_conjugate_in_bohr: witness left the Bohr set");
        result.witness = Witness{e.g, a, c, e.length, e.word, tau(spec, spec.element(a)), scan.membership};
        return result;
      }
    }
    if (layers.radius() >= L || !layers.advance()) return result;
  }
}

SearchResult charpoly_witness(const Traceless& c, const BohrSpec& spec, const ThickMask* mask, int L,
                              const SearchOptions& options) {
  const IntPolynomial p = char_poly<BigInt>(c.matrix());
  SearchResult r = find_conjugate_in_bohr(c, spec, mask, L, options);
  if (r.witness && !(char_poly<BigInt>(r.witness->a.matrix()) == p)) {
    throw std::logic_error("charpoly_witness: characteristic polynomial changed under conjugation");
  }
  return r;
}

SearchResult charpoly_witness(const IntPolynomial& p, const BohrSpec& spec, const ThickMask* mask, int L,
                              const SearchOptions& options) {
  if (p.degree() < 2) throw std::invalid_argument("charpoly_witness: degree must be at least 2");
  return charpoly_witness(traceless_companion(p), spec, mask, L, options);
}

std::size_t CoverageTable::found() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.found; }));
}

CoverageTable discriminant_cover(const BohrSpec& spec, const ThickMask* mask, std::int64_t M, std::int64_t t_min,
                                 std::int64_t t_max, const CoverOptions& options) {
  if (spec.ambient() != Ambient::Integers) throw std::invalid_argument("discriminant_cover: ambient must be Z");
  if (!spec.zero_centered()) throw std::invalid_argument("discriminant_cover: Bohr set must be Bohr-zero");
  if (M < 0 || M > 1'000'000'000) throw std::invalid_argument("discriminant_cover: M must lie in [0, 1e9]");
  if (t_min > t_max) throw std::invalid_argument("discriminant_cover: empty t range");

  CoverageTable table;
  table.M = M;
  std::vector<std::int64_t> members;
  for_each_in_box(spec, mask, M, [&](const IntVector& h, const Membership& m) {
    if (m.verdict == Verdict::Inside) members.push_back(h(0).convert_to<std::int64_t>());
    if (m.verdict == Verdict::Undecidable) ++table.undecidable;
  });
  table.members = members.size();
  std::sort(members.begin(), members.end(), [](std::int64_t a, std::int64_t b) {
    const auto aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    return aa != bb ? aa < bb : a > b;
  });
  const std::unordered_set<std::int64_t> member_set(members.begin(), members.end());
  const bool has_zero = member_set.count(0) > 0;

  const std::size_t count = static_cast<std::size_t>(t_max - t_min + 1);
  table.rows.resize(count);
  detail::parallel_blocks(count, options.workers, [&](std::size_t idx) {
    CoverageRow& row = table.rows[idx];
    row.t = t_min + static_cast<std::int64_t>(idx);
    // t = -z^2 is covered by x = y = 0 whenever 0 and z are members.
    if (has_zero && row.t <= 0) {
      for (const std::int64_t z : members) {
        if (row.t + z * z == 0) {
          row = {row.t, true, 0, 0, z, false};
          return;
        }
      }
    }
    std::size_t work = 0;
    for (const std::int64_t z : members) {
      const std::int64_t n = row.t + z * z;
      if (n == 0) continue;
      const std::int64_t abs_n = n < 0 ? -n : n;
      for (const std::int64_t x : members) {
        if (x == 0) continue;
        if (x * x > abs_n) break;
        if (++work > options.budget) return;
        if (n % x != 0) continue;
        const std::int64_t y = n / x;
        if (member_set.count(y)) {
          row = {row.t, true, x, y, z, false};
          return;
        }
      }
    }
    row.exhausted = true;
  });

  for (const auto& row : table.rows) {
    if (row.found && row.x * row.y - row.z * row.z != row.t) {
      throw std::logic_error("discriminant_cover: witness failed re-verification");
    }
  }
  return table;
}

}  // namespace bohrwalk
