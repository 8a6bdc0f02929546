#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symbreak/layout.hpp"
#include "symbreak/rng.hpp"

namespace symbreak {

// Permutation of {0,...,N-1}, stored as its moved points only. A product of
// fifty transposition generators on a full-size instance moves a few thousand
// of ~4 million indices, so full image arrays are never materialised.
//
// Composition convention, used repo-wide: compose(P, Q)(i) = P(Q(i)).
class Permutation {
 public:
  using Moved = std::vector<std::pair<VarIndex, VarIndex>>;  // (i, image of i)

  Permutation() = default;

  static Permutation identity(std::uint32_t n) {
    Permutation p;
    p.size_ = n;
    return p;
  }

  static Permutation transposition(std::uint32_t n, VarIndex a, VarIndex b) {
    if (a >= n || b >= n) throw std::out_of_range("transposition index out of range");
    Permutation p;
    p.size_ = n;
    if (a != b) {
      p.moved_ = {{std::min(a, b), std::max(a, b)}, {std::max(a, b), std::min(a, b)}};
    }
    return p;
  }

  // `moved` must be sorted by source, free of fixed points, and a bijection
  // on its own key/value sets.
  static Permutation from_moved(std::uint32_t n, Moved moved) {
    Permutation p;
    p.size_ = n;
    p.moved_ = std::move(moved);
    return p;
  }

  // Full image array, mostly for tests and tiny instances.
  static Permutation from_image(const std::vector<VarIndex>& image) {
    Permutation p;
    p.size_ = static_cast<std::uint32_t>(image.size());
    std::vector<bool> hit(image.size(), false);
    for (std::uint32_t i = 0; i < image.size(); ++i) {
      if (image[i] >= image.size() || hit[image[i]])
        throw std::invalid_argument("image is not a bijection");
      hit[image[i]] = true;
      if (image[i] != i) p.moved_.emplace_back(i, image[i]);
    }
    return p;
  }

  std::uint32_t size() const { return size_; }

  VarIndex operator()(VarIndex i) const {
    if (i >= size_) throw std::out_of_range("index " + std::to_string(i) + " out of permutation domain");
    auto it = std::lower_bound(moved_.begin(), moved_.end(), i,
                               [](const auto& e, VarIndex v) { return e.first < v; });
    return (it != moved_.end() && it->first == i) ? it->second : i;
  }

  const Moved& moved() const { return moved_; }
  bool is_identity() const { return moved_.empty(); }

  friend Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size_ != q.size_) throw std::invalid_argument("permutation size mismatch");
    Permutation r;
    r.size_ = p.size_;
    std::vector<VarIndex> sources;
    sources.reserve(p.moved_.size() + q.moved_.size());
    for (const auto& [i, _] : q.moved_) sources.push_back(i);
    for (const auto& [i, _] : p.moved_) sources.push_back(i);
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    for (VarIndex i : sources) {
      const VarIndex img = p(q(i));
      if (img != i) r.moved_.emplace_back(i, img);
    }
    return r;
  }

  friend Permutation inverse(const Permutation& p) {
    Permutation r;
    r.size_ = p.size_;
    r.moved_.reserve(p.moved_.size());
    for (const auto& [i, j] : p.moved_) r.moved_.emplace_back(j, i);
    std::sort(r.moved_.begin(), r.moved_.end());
    return r;
  }

  bool operator==(const Permutation& o) const {
    return size_ == o.size_ && moved_ == o.moved_;
  }

  // `i -> j` per line, moved points only.
  std::string dump_moved() const {
    std::ostringstream os;
    for (const auto& [i, j] : moved_) os << i << " -> " << j << "\n";
    return os.str();
  }

 private:
  std::uint32_t size_ = 0;
  Moved moved_;  // sorted by source index, never contains fixed points
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::uint64_t h = fnv1a64("perm") ^ p.size();
    for (const auto& [i, j] : p.moved()) {
      h = splitmix64(h ^ i);
      h = splitmix64(h ^ j);
    }
    return static_cast<std::size_t>(h);
  }
};

// Swaps the whole variable column of bin 1 with the column of bin k: the
// y variables and all assignment rows move together.
inline Permutation bin_transposition(const VarLayout& layout, std::uint32_t k) {
  if (k < 2 || k > layout.bins)
    throw std::out_of_range("bin transposition needs 2 <= k <= n, got k=" + std::to_string(k));
  Permutation::Moved moved;
  moved.reserve(2 * (layout.items + 1));
  const VarIndex a0 = 0;                              // column of bin 1
  const VarIndex b0 = (k - 1) * (layout.items + 1);   // column of bin k
  for (std::uint32_t r = 0; r <= layout.items; ++r) {
    moved.emplace_back(a0 + r, b0 + r);
    moved.emplace_back(b0 + r, a0 + r);
  }
  std::sort(moved.begin(), moved.end());
  return Permutation::from_moved(layout.num_vars(), std::move(moved));
}

// In every bin column, swaps the row of the class's first item i_j with the
// row of item k. Only items of equal size may trade places, so k must lie
// strictly inside class j.
inline Permutation item_transposition(const VarLayout& layout, const SizeBoundaries& b,
                                      std::size_t class_idx, std::uint32_t k) {
  if (class_idx >= b.num_classes())
    throw std::out_of_range("size class index out of range");
  const std::uint32_t first = b.class_begin(class_idx);
  const std::uint32_t end = b.class_end(class_idx);
  if (k <= first || k >= end)
    throw std::out_of_range("item " + std::to_string(k) + " is not a non-leading member of class " +
                            std::to_string(class_idx) + " [" + std::to_string(first) + "," +
                            std::to_string(end) + ")");
  Permutation::Moved moved;
  moved.reserve(2 * layout.bins);
  for (std::uint32_t c = 1; c <= layout.bins; ++c) {
    const VarIndex a = layout.x_index(first, c);
    const VarIndex bb = layout.x_index(k, c);
    moved.emplace_back(a, bb);
    moved.emplace_back(bb, a);
  }
  std::sort(moved.begin(), moved.end());
  return Permutation::from_moved(layout.num_vars(), std::move(moved));
}

// Number of transposition generators: (n-1) bin swaps plus, per size class,
// one swap of the leading item with each other member.
inline std::uint64_t generator_count(const VarLayout& layout, const SizeBoundaries& b) {
  std::uint64_t total = layout.bins >= 1 ? layout.bins - 1 : 0;
  for (std::size_t j = 0; j < b.num_classes(); ++j) total += b.class_size(j) - 1;
  return total;
}

inline Permutation generator_by_index(const VarLayout& layout, const SizeBoundaries& b,
                                      std::uint64_t idx) {
  const std::uint64_t nbin = layout.bins >= 1 ? layout.bins - 1 : 0;
  if (idx < nbin) return bin_transposition(layout, static_cast<std::uint32_t>(idx + 2));
  idx -= nbin;
  for (std::size_t j = 0; j < b.num_classes(); ++j) {
    const std::uint64_t in_class = b.class_size(j) - 1;
    if (idx < in_class)
      return item_transposition(layout, b, j, b.class_begin(j) + 1 + static_cast<std::uint32_t>(idx));
    idx -= in_class;
  }
  throw std::out_of_range("generator index out of range");
}

inline std::vector<Permutation> all_generators(const VarLayout& layout, const SizeBoundaries& b) {
  std::vector<Permutation> gens;
  const std::uint64_t total = generator_count(layout, b);
  gens.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx)
    gens.push_back(generator_by_index(layout, b, idx));
  return gens;
}

// Product of `count` generators drawn uniformly, with replacement, from the
// union of both transposition families. Deterministic for a given rng state.
//
// The product accumulates right to left in a hash map of moved points:
// (acc o g)(i) = acc(g(i)) differs from acc only at the points g moves, so
// each step costs O(|g|) instead of resorting the whole support.
inline Permutation random_generator_product(const VarLayout& layout, const SizeBoundaries& b,
                                            std::uint32_t count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("generator product length must be >= 1");
  const std::uint64_t total = generator_count(layout, b);
  if (total == 0)
    throw std::invalid_argument("instance admits no nontrivial generators");

  std::unordered_map<VarIndex, VarIndex> acc;
  const auto acc_at = [&](VarIndex v) {
    auto it = acc.find(v);
    return it == acc.end() ? v : it->second;
  };
  std::vector<std::pair<VarIndex, VarIndex>> updates;
  for (std::uint32_t t = 0; t < count; ++t) {
    const Permutation g = generator_by_index(layout, b, rng.below(total));
    updates.clear();
    for (const auto& [i, j] : g.moved()) updates.emplace_back(i, acc_at(j));
    for (const auto& [i, v] : updates) {
      if (v == i) acc.erase(i);
      else acc[i] = v;
    }
  }

  Permutation::Moved moved(acc.begin(), acc.end());
  std::sort(moved.begin(), moved.end());
  return Permutation::from_moved(layout.num_vars(), std::move(moved));
}

}  // namespace symbreak
