#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "symbreak/binpack.hpp"
#include "symbreak/breakers.hpp"
#include "symbreak/model.hpp"
#include "symbreak/perm.hpp"
#include "symbreak/poly.hpp"

namespace symbreak {

// All oracles are brute force and refuse instead of thrashing: point
// enumeration, orbit closure and group closure are bounded.
struct GuardSettings {
  std::uint64_t max_points = 1ULL << 20;
  std::uint64_t max_orbit = 100000;
  std::uint64_t max_group = 100000;
};

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Point = std::vector<int>;

// Action on assignments matching the substitution convention of
// Polynomial::apply_permutation: (P . x)[i] = x[perm(i)], so that
// h.apply_permutation(P).evaluate(x) == h.evaluate(permute_point(P, x)).
template <class T>
std::vector<T> permute_point(const Permutation& perm, const std::vector<T>& x) {
  if (x.size() != perm.size()) throw std::invalid_argument("point size mismatch");
  std::vector<T> out(x.size());
  for (std::uint32_t i = 0; i < x.size(); ++i) out[i] = x[i];
  for (const auto& [i, j] : perm.moved()) out[i] = x[j];
  return out;
}

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t h = fnv1a64("point");
    for (int v : p) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    return static_cast<std::size_t>(h);
  }
};

// Exhaustive sweep of domain^N for one model: per-point feasibility of the
// linear system and objective value, indexed by the mixed-radix point code
// (digit i has stride |domain|^i).
class EnumerationCache {
 public:
  explicit EnumerationCache(const IPModel& model, const GuardSettings& guards = {})
      : model_(model), radix_(model.domain.size()) {
    if (model.domain.empty()) throw std::invalid_argument("model has an empty domain");
    num_points_ = 1;
    for (std::uint32_t i = 0; i < model.num_vars; ++i) {
      if (num_points_ > guards.max_points / radix_)
        throw GuardExceeded("enumeration of |U|^N = " + std::to_string(radix_) + "^" +
                            std::to_string(model.num_vars) + " points exceeds guard of " +
                            std::to_string(guards.max_points));
      num_points_ *= radix_;
    }

    feasible_.resize(num_points_);
    objective_.resize(num_points_);
    std::vector<std::uint32_t> digits(model.num_vars, 0);
    Point values(model.num_vars, model.domain[0]);
    for (std::uint64_t idx = 0; idx < num_points_; ++idx) {
      feasible_[idx] = model.satisfies_linear(values) ? 1 : 0;
      objective_[idx] = model.objective.evaluate_int(values);
      // odometer increment
      for (std::uint32_t i = 0; i < model.num_vars; ++i) {
        if (++digits[i] < radix_) {
          values[i] = model.domain[digits[i]];
          break;
        }
        digits[i] = 0;
        values[i] = model.domain[0];
      }
    }
  }

  const IPModel& model() const { return model_; }
  std::uint64_t num_points() const { return num_points_; }
  bool feasible(std::uint64_t idx) const { return feasible_[idx] != 0; }
  std::int64_t objective(std::uint64_t idx) const { return objective_[idx]; }

  Point decode(std::uint64_t idx) const {
    Point values(model_.num_vars);
    for (std::uint32_t i = 0; i < model_.num_vars; ++i) {
      values[i] = model_.domain[idx % radix_];
      idx /= radix_;
    }
    return values;
  }

  // Index of the point (P . x) given the digits of x.
  std::uint64_t permuted_index(std::uint64_t idx, const std::vector<std::uint32_t>& digits,
                               const std::vector<std::uint64_t>& strides,
                               const Permutation& perm) const {
    std::int64_t delta = 0;
    for (const auto& [i, j] : perm.moved())
      delta += (static_cast<std::int64_t>(digits[j]) - static_cast<std::int64_t>(digits[i])) *
               static_cast<std::int64_t>(strides[i]);
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(idx) + delta);
  }

  std::vector<std::uint64_t> strides() const {
    std::vector<std::uint64_t> s(model_.num_vars);
    std::uint64_t acc = 1;
    for (std::uint32_t i = 0; i < model_.num_vars; ++i) {
      s[i] = acc;
      acc *= radix_;
    }
    return s;
  }

 private:
  IPModel model_;
  std::uint64_t radix_;
  std::uint64_t num_points_ = 0;
  std::vector<std::uint8_t> feasible_;
  std::vector<std::int64_t> objective_;
};

// Definition check, exhaustively over domain^N: the objective is invariant
// and the linear system holds at P.x exactly when it holds at x.
inline bool check_symmetry(const EnumerationCache& cache, const Permutation& perm) {
  const IPModel& model = cache.model();
  if (perm.size() != model.num_vars) throw std::invalid_argument("permutation size mismatch");
  const auto strides = cache.strides();
  const std::uint64_t radix = model.domain.size();
  std::vector<std::uint32_t> digits(model.num_vars, 0);
  for (std::uint64_t idx = 0; idx < cache.num_points(); ++idx) {
    const std::uint64_t jdx = cache.permuted_index(idx, digits, strides, perm);
    if (cache.objective(idx) != cache.objective(jdx)) return false;
    if (cache.feasible(idx) != cache.feasible(jdx)) return false;
    for (std::uint32_t i = 0; i < model.num_vars; ++i) {
      if (++digits[i] < radix) break;
      digits[i] = 0;
    }
  }
  return true;
}

inline bool check_symmetry(const Permutation& perm, const IPModel& model,
                           const GuardSettings& guards = {}) {
  return check_symmetry(EnumerationCache(model, guards), perm);
}

struct EnumOptimum {
  bool feasible = false;
  std::int64_t value = 0;
  Point argmin;
  std::uint64_t num_optimal = 0;
};

// Exhaustive optimum; side constraints are applied only when requested so the
// base problem and the breaker-augmented problem can be compared.
inline EnumOptimum enumerate_optimum(const EnumerationCache& cache, bool with_side_constraints) {
  EnumOptimum best;
  for (std::uint64_t idx = 0; idx < cache.num_points(); ++idx) {
    if (!cache.feasible(idx)) continue;
    if (with_side_constraints && !cache.model().satisfies_side(cache.decode(idx))) continue;
    const std::int64_t v = cache.objective(idx);
    if (!best.feasible || v < best.value) {
      best.feasible = true;
      best.value = v;
      best.argmin = cache.decode(idx);
      best.num_optimal = 1;
    } else if (v == best.value) {
      ++best.num_optimal;
    }
  }
  return best;
}

inline EnumOptimum enumerate_optimum(const IPModel& model, bool with_side_constraints,
                                     const GuardSettings& guards = {}) {
  return enumerate_optimum(EnumerationCache(model, guards), with_side_constraints);
}

struct OrbitReport {
  std::vector<Point> orbit;  // discovery order, seed point first
  Point witness;             // maximises h over the orbit
  std::int64_t witness_value = 0;
};

// Closure of a point under the generators and their inverses, with the
// h-maximising member recorded.
inline OrbitReport orbit(const Point& start, const std::vector<Permutation>& generators,
                         const Polynomial& h, const GuardSettings& guards = {}) {
  OrbitReport report;
  std::unordered_set<Point, PointHash> seen;
  std::deque<Point> queue;
  seen.insert(start);
  queue.push_back(start);
  report.witness = start;
  report.witness_value = h.evaluate_int(start);
  while (!queue.empty()) {
    Point cur = std::move(queue.front());
    queue.pop_front();
    report.orbit.push_back(cur);
    for (const Permutation& g : generators) {
      for (const Permutation& step : {g, inverse(g)}) {
        Point next = permute_point(step, cur);
        if (seen.insert(next).second) {
          if (seen.size() > guards.max_orbit)
            throw GuardExceeded("orbit exceeds guard of " + std::to_string(guards.max_orbit) +
                                " elements");
          const std::int64_t v = h.evaluate_int(next);
          if (v > report.witness_value) {
            report.witness_value = v;
            report.witness = next;
          }
          queue.push_back(std::move(next));
        }
      }
    }
  }
  return report;
}

// Optimal solution of the base model satisfying every breaker of the family,
// if one exists. One must exist whenever the family's permutations are
// genuine symmetries; an empty return flags an upstream bug (or an infeasible
// model).
inline std::optional<Point> sound_optimum(const EnumerationCache& cache,
                                             const BreakerFamily& family) {
  std::optional<std::int64_t> best;
  for (std::uint64_t idx = 0; idx < cache.num_points(); ++idx)
    if (cache.feasible(idx) && (!best || cache.objective(idx) < *best))
      best = cache.objective(idx);
  if (!best) return std::nullopt;
  for (std::uint64_t idx = 0; idx < cache.num_points(); ++idx) {
    if (!cache.feasible(idx) || cache.objective(idx) != *best) continue;
    const Point x = cache.decode(idx);
    bool ok = true;
    for (const Polynomial& g : family.breakers)
      if (g.evaluate_int(x) > 0) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return std::nullopt;
}

inline bool check_family_soundness(const EnumerationCache& cache, const BreakerFamily& family) {
  return sound_optimum(cache, family).has_value();
}

inline bool check_family_soundness(const IPModel& model, const BreakerFamily& family,
                           const GuardSettings& guards = {}) {
  return check_family_soundness(EnumerationCache(model, guards), family);
}

// Full group closure of the generators (BFS over composition).
inline std::vector<Permutation> group_closure(const std::vector<Permutation>& generators,
                                              const GuardSettings& guards = {}) {
  if (generators.empty()) return {};
  std::vector<Permutation> group;
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> queue;
  const Permutation id = Permutation::identity(generators.front().size());
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation cur = std::move(queue.front());
    queue.pop_front();
    group.push_back(cur);
    for (const Permutation& g : generators) {
      for (const Permutation& step : {g, inverse(g)}) {
        Permutation next = compose(step, cur);
        if (seen.insert(next).second) {
          if (seen.size() > guards.max_group)
            throw GuardExceeded("group closure exceeds guard of " +
                                std::to_string(guards.max_group) + " elements");
          queue.push_back(std::move(next));
        }
      }
    }
  }
  return group;
}

struct FundamentalRegionReport {
  std::uint64_t samples = 0;
  std::uint64_t in_region = 0;            // samples inside F
  std::uint64_t violations_exactness = 0; // (a) homomorphism / antisymmetry failures
  std::uint64_t violations_overlap = 0;   // (b) sample in F and in some PF
  std::uint64_t violations_cover = 0;     // (c) sample with no maximising closure
  std::size_t group_order = 0;
  std::vector<std::string> unwitnessed;   // moved-point dumps of P with L_P not yet witnessed
  bool all_witnessed = false;             // every L_P seen nonempty at least once

  bool clean() const {
    return violations_exactness == 0 && violations_overlap == 0 && violations_cover == 0;
  }
};

// Sampled check of the fundamental-region construction
// F = intersection of { x : h(Px) - h(x) < 0 } over nonidentity P. Exact
// rational arithmetic on rational sample points; decides each strict
// inequality without tolerances. Cost grows with |G|^2 per sample, meant for
// desk-scale groups.
inline FundamentalRegionReport check_fundamental_region(const std::vector<Permutation>& generators,
                                                        const Polynomial& h, std::uint64_t samples,
                                                        Rng& rng, const GuardSettings& guards = {}) {
  FundamentalRegionReport report;
  const std::vector<Permutation> group = group_closure(generators, guards);
  report.group_order = group.size();
  if (group.empty()) return report;
  const std::uint32_t n = group.front().size();

  std::vector<const Permutation*> nonid;
  for (const Permutation& p : group)
    if (!p.is_identity()) nonid.push_back(&p);
  std::vector<Polynomial> h_of;  // h(Px) per nonidentity P
  for (const Permutation* p : nonid) h_of.push_back(h.apply_permutation(*p));

  std::vector<bool> witnessed(nonid.size(), false);

  const auto member_F = [&](const std::vector<Rational>& pt) {
    const Rational hx = h.evaluate(pt);
    for (const Permutation* p : nonid)
      if (h.evaluate(permute_point(*p, pt)) >= hx) return false;
    return !nonid.empty();
  };

  for (std::uint64_t s = 0; s < samples; ++s) {
    ++report.samples;
    std::vector<Rational> x(n);
    for (std::uint32_t i = 0; i < n; ++i)
      x[i] = Rational(rng.range(-24, 24), rng.range(1, 8));
    const Rational hx = h.evaluate(x);

    bool in_f = !nonid.empty();
    for (std::size_t t = 0; t < nonid.size(); ++t) {
      const std::vector<Rational> px = permute_point(*nonid[t], x);
      const Rational via_subst = h_of[t].evaluate(x);
      const Rational via_action = h.evaluate(px);
      const Rational val = via_subst - hx;
      // (a) substitution and point action agree, and the inequality flips
      // exactly under the inverse at the permuted point
      const Rational reverse = h.evaluate(permute_point(inverse(*nonid[t]), px)) - h.evaluate(px);
      if (via_subst != via_action || reverse != -val) ++report.violations_exactness;
      if (val < 0) witnessed[t] = true;
      if (!(val < 0)) in_f = false;
    }
    if (in_f) {
      ++report.in_region;
      // (b) F meets no PF: x in PF means P^{-1}.x in F
      for (const Permutation* p : nonid)
        if (member_F(permute_point(inverse(*p), x))) {
          ++report.violations_overlap;
          break;
        }
    }
    // (c) x lies in the closure of QF for the Q maximising h over the orbit
    Rational best = hx;
    for (const Permutation* p : nonid) {
      const Rational v = h.evaluate(permute_point(*p, x));
      if (v > best) best = v;
    }
    bool cover = hx <= best;
    for (const Permutation* p : nonid)
      if (h.evaluate(permute_point(*p, x)) > best) cover = false;
    if (!cover) ++report.violations_cover;
  }

  report.all_witnessed = true;
  for (std::size_t t = 0; t < nonid.size(); ++t) {
    if (!witnessed[t]) {
      report.all_witnessed = false;
      report.unwitnessed.push_back(nonid[t]->dump_moved());
    }
  }
  return report;
}

struct LinearExistenceResult {
  bool found = false;        // a linear h with every L_P nonempty was exhibited
  bool vacuous = false;      // trivial group, nothing to witness
  bool inconclusive = false; // retry budget exhausted; never means "false"
  std::uint32_t attempts = 0;
  Polynomial h;
};

// Searches random linear forms with pairwise-distinct positive coefficients;
// each L_P is witnessed constructively at the point x_j = a_j - a_{inv(P)(j)},
// where the difference form evaluates to minus a sum of squares.
inline LinearExistenceResult check_linear_existence(std::uint32_t num_vars,
                                                    const std::vector<Permutation>& generators,
                                                    Rng& rng, const GuardSettings& guards = {},
                                                    std::uint32_t max_attempts = 32) {
  LinearExistenceResult result;
  const std::vector<Permutation> group = group_closure(generators, guards);
  std::vector<const Permutation*> nonid;
  for (const Permutation& p : group)
    if (!p.is_identity()) nonid.push_back(&p);
  if (nonid.empty()) {
    result.found = true;
    result.vacuous = true;
    return result;
  }

  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    ++result.attempts;
    const auto raw = rng.sample_distinct(4ULL * num_vars + 8, num_vars);
    std::vector<std::int64_t> coeff(num_vars);
    Polynomial h;
    for (std::uint32_t i = 0; i < num_vars; ++i) {
      coeff[i] = static_cast<std::int64_t>(raw[i]) + 1;
      h = h + Polynomial::var(i, 1, coeff[i]);
    }
    bool all = true;
    for (const Permutation* p : nonid) {
      const Permutation pinv = inverse(*p);
      std::vector<int> x(num_vars);
      for (std::uint32_t j = 0; j < num_vars; ++j)
        x[j] = static_cast<int>(coeff[j] - coeff[pinv(j)]);
      const Polynomial diff = h.apply_permutation(*p) - h;
      if (!(diff.evaluate_int(x) < 0)) {
        all = false;
        break;
      }
    }
    if (all) {
      result.found = true;
      result.h = h;
      return result;
    }
  }
  result.inconclusive = true;
  return result;
}

// Minimum number of capacity-feasible item groups, by exhaustive enumeration
// of set partitions. Independent of the branch-and-bound path: it never sees
// the IP model, bins are indistinguishable, and no bounding is applied beyond
// the monotone block count. Desk scale only.
inline std::uint32_t packing_min_bins(const BinPackingInstance& inst, std::uint32_t max_items = 14) {
  inst.validate();
  const std::uint32_t m = inst.items();
  if (m > max_items)
    throw GuardExceeded("partition enumeration limited to " + std::to_string(max_items) + " items");
  std::uint32_t best = m;  // singletons are always feasible
  std::vector<std::int64_t> loads;
  const auto recurse = [&](auto&& self, std::uint32_t item) -> void {
    if (loads.size() >= best) return;  // block count only ever grows
    if (item == m) {
      best = static_cast<std::uint32_t>(loads.size());
      return;
    }
    const std::int64_t s = inst.sizes[m - 1 - item];  // descending order
    const std::size_t existing = loads.size();        // deeper calls grow the vector
    for (std::size_t b = 0; b < existing; ++b) {
      if (loads[b] + s <= inst.capacity) {
        loads[b] += s;
        self(self, item + 1);
        loads[b] -= s;
      }
    }
    loads.push_back(s);
    self(self, item + 1);
    loads.pop_back();
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace symbreak
