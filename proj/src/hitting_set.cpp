#include "srcloc/hitting_set.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "srcloc/errors.hpp"

namespace srcloc {

namespace {

// Bitset over a dense relabeling of the universe. Universe sizes here are
// small (tens of sensors), so a short word vector beats anything fancier.
using Mask = std::vector<std::uint64_t>;

void set_bit(Mask& m, int i) { m[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool test_bit(const Mask& m, int i) {
  return (m[i >> 6] >> (i & 63)) & 1;
}

bool intersects(const Mask& a, const Mask& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & b[w]) return true;
  }
  return false;
}

bool is_subset_of(const Mask& a, const Mask& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
  }
  return true;
}

template <typename F>
void for_each_bit(const Mask& m, F&& f) {
  for (std::size_t w = 0; w < m.size(); ++w) {
    std::uint64_t bits = m[w];
    while (bits) {
      f(static_cast<int>(w * 64) + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
}

struct DenseInstance {
  std::vector<int> id_of;    // dense element -> original id, ascending
  std::vector<Mask> masks;   // one per subset
  int words = 1;
};

DenseInstance build_dense(const std::vector<std::vector<int>>& subsets) {
  std::vector<int> ids;
  for (const auto& subset : subsets) {
    if (subset.empty()) {
      throw std::invalid_argument("hitting set: subsets must be nonempty");
    }
    for (int e : subset) {
      if (e < 0) throw std::invalid_argument("hitting set: indices must be >= 0");
      ids.push_back(e);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  DenseInstance inst;
  inst.id_of = std::move(ids);
  inst.words = std::max<int>(1, (static_cast<int>(inst.id_of.size()) + 63) / 64);
  inst.masks.reserve(subsets.size());
  for (const auto& subset : subsets) {
    Mask m(static_cast<std::size_t>(inst.words), 0);
    for (int e : subset) {
      const auto it = std::lower_bound(inst.id_of.begin(), inst.id_of.end(), e);
      set_bit(m, static_cast<int>(it - inst.id_of.begin()));
    }
    inst.masks.push_back(std::move(m));
  }
  return inst;
}

int restricted_popcount(const Mask& s, const Mask& allowed) {
  int c = 0;
  for (std::size_t w = 0; w < s.size(); ++w) {
    c += std::popcount(s[w] & allowed[w]);
  }
  return c;
}

/// Greedy cover in dense space plus a minimality sweep. Returns ascending
/// dense element ids. Ties go to the lowest element.
std::vector<int> greedy_dense(const std::vector<Mask>& masks, int u, int words) {
  std::vector<char> covered(masks.size(), 0);
  std::size_t remaining = masks.size();
  std::vector<int> chosen;
  std::vector<int> count(static_cast<std::size_t>(u));
  while (remaining > 0) {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (covered[j]) continue;
      for_each_bit(masks[j], [&](int e) { ++count[static_cast<std::size_t>(e)]; });
    }
    int best = -1;
    int best_count = 0;
    for (int e = 0; e < u; ++e) {
      if (count[static_cast<std::size_t>(e)] > best_count) {
        best = e;
        best_count = count[static_cast<std::size_t>(e)];
      }
    }
    chosen.push_back(best);
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (!covered[j] && test_bit(masks[j], best)) {
        covered[j] = 1;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());

  // Drop redundant members, trying the highest index first so the kept
  // set skews toward low indices, matching the selection tie-break.
  Mask kept(static_cast<std::size_t>(words), 0);
  for (int e : chosen) set_bit(kept, e);
  for (int i = static_cast<int>(chosen.size()) - 1; i >= 0; --i) {
    Mask without = kept;
    without[chosen[static_cast<std::size_t>(i)] >> 6] &=
        ~(std::uint64_t{1} << (chosen[static_cast<std::size_t>(i)] & 63));
    bool still_hits = true;
    for (const Mask& m : masks) {
      if (!intersects(m, without)) {
        still_hits = false;
        break;
      }
    }
    if (still_hits) {
      kept = without;
      chosen.erase(chosen.begin() + i);
    }
  }
  return chosen;
}

/// Iterative-deepening branch and bound for the exact minimum, followed by
/// a position-wise extraction of the lexicographically smallest optimum.
class ExactSolver {
 public:
  ExactSolver(const std::vector<std::vector<int>>& subsets, std::uint64_t budget)
      : budget_(budget) {
    DenseInstance inst = build_dense(subsets);
    id_of_ = std::move(inst.id_of);
    words_ = inst.words;
    u_ = static_cast<int>(id_of_.size());

    // Duplicate subsets and proper supersets are redundant: any set
    // hitting the smaller subset hits them too.
    std::sort(inst.masks.begin(), inst.masks.end());
    inst.masks.erase(std::unique(inst.masks.begin(), inst.masks.end()),
                     inst.masks.end());
    std::stable_sort(inst.masks.begin(), inst.masks.end(),
                     [](const Mask& a, const Mask& b) {
                       return restricted_count(a) < restricted_count(b);
                     });
    for (const Mask& m : inst.masks) {
      bool dominated = false;
      for (const Mask& kept : subs_) {
        if (is_subset_of(kept, m)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) subs_.push_back(m);
    }

    degree_.assign(static_cast<std::size_t>(u_), 0);
    for (const Mask& m : subs_) {
      for_each_bit(m, [&](int e) { ++degree_[static_cast<std::size_t>(e)]; });
    }

    const std::size_t depth_cap = static_cast<std::size_t>(u_) + 2;
    chosen_scratch_.assign(depth_cap, Mask(static_cast<std::size_t>(words_), 0));
    used_scratch_.assign(depth_cap, Mask(static_cast<std::size_t>(words_), 0));
  }

  std::vector<int> solve() {
    if (subs_.empty()) return {};
    const std::vector<int> greedy = greedy_dense(subs_, u_, words_);
    incumbent_.clear();
    for (int e : greedy) incumbent_.push_back(id_of_[static_cast<std::size_t>(e)]);

    Mask none(static_cast<std::size_t>(words_), 0);
    Mask all(static_cast<std::size_t>(words_), 0);
    for (int e = 0; e < u_; ++e) set_bit(all, e);

    const int ub = static_cast<int>(greedy.size());
    int k_star = ub;
    for (int k = packing_bound(none, all); k < ub; ++k) {
      if (exists(none, all, k, 0)) {
        k_star = k;
        break;
      }
    }

    std::vector<int> result;
    Mask chosen = none;
    int min_next = 0;
    for (int pos = 0; pos < k_star; ++pos) {
      const int remaining = k_star - pos - 1;
      Mask cand(static_cast<std::size_t>(words_), 0);
      for (const Mask& s : subs_) {
        if (!intersects(s, chosen)) {
          for (std::size_t w = 0; w < cand.size(); ++w) cand[w] |= s[w];
        }
      }
      int picked = -1;
      for (int e = min_next; e < u_ && picked < 0; ++e) {
        if (!test_bit(cand, e)) continue;
        Mask chosen2 = chosen;
        set_bit(chosen2, e);
        Mask allowed(static_cast<std::size_t>(words_), 0);
        for (int f = e + 1; f < u_; ++f) set_bit(allowed, f);
        if (exists(chosen2, allowed, remaining, 0)) {
          picked = e;
          chosen = chosen2;
          min_next = e + 1;
        }
      }
      if (picked < 0) {
        // Cannot happen: k_star was certified feasible above.
        throw std::logic_error("hitting set: extraction lost feasibility");
      }
      result.push_back(id_of_[static_cast<std::size_t>(picked)]);
    }
    return result;
  }

 private:
  static int restricted_count(const Mask& m) {
    int c = 0;
    for (std::uint64_t w : m) c += std::popcount(w);
    return c;
  }

  /// Disjoint-subset packing over subsets not hit by chosen, restricted to
  /// allowed elements. Each packed subset needs its own new element, so
  /// the count lower-bounds the completion size. Returns INT_MAX when some
  /// uncovered subset has no allowed element left.
  int packing_bound(const Mask& chosen, const Mask& allowed) {
    Mask& used = used_scratch_.back();
    std::fill(used.begin(), used.end(), 0);
    int packed = 0;
    for (const Mask& s : subs_) {
      if (intersects(s, chosen)) continue;
      bool overlaps_used = false;
      bool any_allowed = false;
      for (std::size_t w = 0; w < s.size(); ++w) {
        const std::uint64_t restricted = s[w] & allowed[w];
        if (restricted) any_allowed = true;
        if (restricted & used[w]) overlaps_used = true;
      }
      if (!any_allowed) return INT_MAX;
      if (!overlaps_used) {
        ++packed;
        for (std::size_t w = 0; w < s.size(); ++w) used[w] |= s[w] & allowed[w];
      }
    }
    return packed;
  }

  /// True iff some set of at most `remaining` allowed elements hits every
  /// subset that chosen misses.
  bool exists(const Mask& chosen, const Mask& allowed, int remaining, int depth) {
    if (++nodes_ > budget_) {
      throw SolverBudgetError("hitting set: node budget exhausted", incumbent_, nodes_);
    }
    Mask& used = used_scratch_[static_cast<std::size_t>(depth)];
    std::fill(used.begin(), used.end(), 0);
    int packed = 0;
    int pivot = -1;
    int pivot_size = INT_MAX;
    for (std::size_t j = 0; j < subs_.size(); ++j) {
      const Mask& s = subs_[j];
      if (intersects(s, chosen)) continue;
      const int rsize = restricted_popcount(s, allowed);
      if (rsize == 0) return false;
      if (rsize < pivot_size) {
        pivot_size = rsize;
        pivot = static_cast<int>(j);
      }
      bool overlaps_used = false;
      for (std::size_t w = 0; w < s.size(); ++w) {
        if (s[w] & allowed[w] & used[w]) {
          overlaps_used = true;
          break;
        }
      }
      if (!overlaps_used) {
        ++packed;
        for (std::size_t w = 0; w < s.size(); ++w) used[w] |= s[w] & allowed[w];
      }
    }
    if (pivot < 0) return true;
    if (packed > remaining || remaining == 0) return false;

    // Branch on the tightest subset, high-degree elements first; this is
    // only a search order, the result is order-independent.
    int elems[64];
    int count = 0;
    const Mask& ps = subs_[static_cast<std::size_t>(pivot)];
    for (std::size_t w = 0; w < ps.size() && count < 64; ++w) {
      std::uint64_t bits = ps[w] & allowed[w];
      while (bits && count < 64) {
        elems[count++] = static_cast<int>(w * 64) + std::countr_zero(bits);
        bits &= bits - 1;
      }
    }
    std::sort(elems, elems + count, [&](int a, int b) {
      const int da = degree_[static_cast<std::size_t>(a)];
      const int db = degree_[static_cast<std::size_t>(b)];
      return da != db ? da > db : a < b;
    });
    Mask& chosen2 = chosen_scratch_[static_cast<std::size_t>(depth)];
    for (int i = 0; i < count; ++i) {
      chosen2 = chosen;
      set_bit(chosen2, elems[i]);
      if (exists(chosen2, allowed, remaining - 1, depth + 1)) return true;
    }
    return false;
  }

  std::vector<int> id_of_;
  std::vector<Mask> subs_;
  std::vector<int> degree_;
  std::vector<Mask> chosen_scratch_;
  std::vector<Mask> used_scratch_;
  std::vector<int> incumbent_;
  int u_ = 0;
  int words_ = 1;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

int universe_size(const NeighborhoodCollection& collection) {
  std::unordered_set<int> ids;
  for (const auto& subset : collection.subsets) {
    ids.insert(subset.begin(), subset.end());
  }
  return static_cast<int>(ids.size());
}

}  // namespace

NeighborhoodCollection build_collection(const BinaryDataSet& data) {
  NeighborhoodCollection collection;
  for (int t = 0; t < data.sample_count(); ++t) {
    std::vector<int> alarmed;
    for (int n = 0; n < data.sensor_count(); ++n) {
      if (data.at(t, n)) alarmed.push_back(n);
    }
    if (alarmed.empty()) {
      ++collection.dropped_samples;
    } else {
      collection.subsets.push_back(std::move(alarmed));
    }
  }
  if (collection.subsets.empty()) {
    throw EmptyCollectionError("build_collection: every sample is all-quiet");
  }
  return collection;
}

bool is_hitting_set(const std::vector<std::vector<int>>& subsets,
                    const std::vector<int>& members) {
  const std::unordered_set<int> chosen(members.begin(), members.end());
  for (const auto& subset : subsets) {
    bool hit = false;
    for (int e : subset) {
      if (chosen.count(e)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

bool is_minimal_hitting_set(const std::vector<std::vector<int>>& subsets,
                            const std::vector<int>& members) {
  if (!is_hitting_set(subsets, members)) return false;
  const std::unordered_set<int> chosen(members.begin(), members.end());
  std::unordered_set<int> needed;
  for (const auto& subset : subsets) {
    int present = 0;
    int last = -1;
    for (int e : subset) {
      if (chosen.count(e)) {
        ++present;
        last = e;
      }
    }
    if (present == 1) needed.insert(last);
  }
  return needed.size() == chosen.size();
}

HittingSet minimum_hitting_set(const NeighborhoodCollection& collection,
                               const SolverOptions& options) {
  if (collection.subsets.empty()) {
    throw EmptyCollectionError("minimum_hitting_set: collection has no subsets");
  }
  ExactSolver solver(collection.subsets, options.node_budget);
  return {solver.solve(), true};
}

HittingSet minimal_hitting_set(const NeighborhoodCollection& collection) {
  if (collection.subsets.empty()) {
    throw EmptyCollectionError("minimal_hitting_set: collection has no subsets");
  }
  DenseInstance inst = build_dense(collection.subsets);
  const std::vector<int> dense =
      greedy_dense(inst.masks, static_cast<int>(inst.id_of.size()), inst.words);
  HittingSet result;
  result.optimal = false;
  for (int e : dense) result.members.push_back(inst.id_of[static_cast<std::size_t>(e)]);
  return result;
}

HittingSet solve_hitting_set(const NeighborhoodCollection& collection,
                             SolverKind kind, const SolverOptions& options) {
  switch (kind) {
    case SolverKind::kExact:
      return minimum_hitting_set(collection, options);
    case SolverKind::kGreedy:
      return minimal_hitting_set(collection);
    case SolverKind::kAuto:
      break;
  }
  if (universe_size(collection) <= 64 && collection.subsets.size() <= 5000) {
    try {
      return minimum_hitting_set(collection, options);
    } catch (const SolverBudgetError&) {
      return minimal_hitting_set(collection);
    }
  }
  return minimal_hitting_set(collection);
}

LocationEstimate hs_estimate(const NeighborhoodCollection& collection,
                             std::span<const Point> positions, SolverKind kind,
                             const SolverOptions& options) {
  if (collection.subsets.empty()) {
    throw EmptyCollectionError("hs_estimate: collection has no subsets");
  }
  const HittingSet hs = solve_hitting_set(collection, kind, options);
  double sx = 0.0, sy = 0.0;
  for (int n : hs.members) {
    if (n < 0 || static_cast<std::size_t>(n) >= positions.size()) {
      throw std::invalid_argument("hs_estimate: subset index outside the sensor field");
    }
    sx += positions[static_cast<std::size_t>(n)].x;
    sy += positions[static_cast<std::size_t>(n)].y;
  }
  const double k = static_cast<double>(hs.members.size());
  return {sx / k, sy / k};
}

LocationEstimate hs_estimate(const NeighborhoodCollection& collection,
                             const SensorField& field, SolverKind kind,
                             const SolverOptions& options) {
  return hs_estimate(collection, field.positions(), kind, options);
}

int sample_bound(double delta, int d, double p_f) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("sample_bound: delta must lie in (0, 1)");
  }
  if (d < 1) throw std::invalid_argument("sample_bound: d must be >= 1");
  if (!(p_f >= 0.0 && p_f < 1.0)) {
    throw std::invalid_argument("sample_bound: p_f must lie in [0, 1)");
  }
  if (p_f == 0.0) return 1;
  const long double ratio =
      (std::log(static_cast<long double>(delta)) - std::log(static_cast<long double>(d))) /
      std::log(static_cast<long double>(p_f));
  // Nudge below the ceiling so ratios that are mathematically integral do
  // not round up one extra sample from floating-point residue.
  const long double m = std::ceil(ratio - 1e-9L);
  return static_cast<int>(std::max<long double>(1.0L, m));
}

int multi_sample_bound(double delta, int k_sources, int d, double p_f) {
  if (k_sources < 1) {
    throw std::invalid_argument("multi_sample_bound: k_sources must be >= 1");
  }
  if (d < 1) throw std::invalid_argument("multi_sample_bound: d must be >= 1");
  if (d > INT_MAX / k_sources) {
    throw std::invalid_argument("multi_sample_bound: k_sources * d overflows");
  }
  return sample_bound(delta, k_sources * d, p_f);
}

}  // namespace srcloc
