#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symbreak/layout.hpp"
#include "symbreak/model.hpp"
#include "symbreak/poly.hpp"
#include "symbreak/rng.hpp"

namespace symbreak {

// 0-1 bin packing instance: m items with ascending positive sizes, n bins of
// capacity B. Generated benchmarks carry their provenance so the instance
// file round-trips byte-identically.
struct BinPackingInstance {
  std::int64_t capacity = 0;
  std::vector<std::int64_t> sizes;  // ascending
  std::uint32_t bins = 0;

  // provenance of generated instances (0/empty for hand-built ones)
  std::uint64_t seed = 0;
  std::int64_t interval_lo = 0;
  std::int64_t interval_hi = 0;
  std::uint32_t class_count = 0;

  std::uint32_t items() const { return static_cast<std::uint32_t>(sizes.size()); }
  VarLayout layout() const { return VarLayout{items(), bins}; }

  void validate() const {
    if (capacity <= 0) throw std::invalid_argument("bin capacity must be positive");
    if (bins == 0) throw std::invalid_argument("instance needs at least one bin");
    if (sizes.empty()) throw std::invalid_argument("instance needs at least one item");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (sizes[i] <= 0) throw std::invalid_argument("item sizes must be positive");
      if (sizes[i] > capacity) throw std::invalid_argument("item exceeds bin capacity");
      if (i > 0 && sizes[i] < sizes[i - 1])
        throw std::invalid_argument("item sizes must be ascending");
    }
  }
};

// Maximal runs of equal size in the ascending size list.
inline SizeBoundaries size_boundaries(const BinPackingInstance& inst) {
  SizeBoundaries b;
  const std::uint32_t m = inst.items();
  b.bounds.push_back(1);
  for (std::uint32_t i = 2; i <= m; ++i)
    if (inst.sizes[i - 1] != inst.sizes[i - 2]) b.bounds.push_back(i);
  b.bounds.push_back(m + 1);
  return b;
}

// Bin packing as an IP over binary variables: per bin a capacity row
// sum_i s_i x_{ik} - B y_k <= 0, per item an assignment row
// sum_k x_{ik} = 1, objective sum_k y_k.
inline IPModel build_model(const BinPackingInstance& inst) {
  inst.validate();
  const VarLayout layout = inst.layout();
  IPModel model;
  model.num_vars = layout.num_vars();
  model.domain = {0, 1};

  for (std::uint32_t k = 1; k <= inst.bins; ++k) {
    LinearConstraint row;
    row.coeffs.emplace_back(layout.y_index(k), -inst.capacity);
    for (std::uint32_t i = 1; i <= inst.items(); ++i)
      row.coeffs.emplace_back(layout.x_index(i, k), inst.sizes[i - 1]);
    row.rel = Relation::LessEq;
    row.rhs = 0;
    model.linear_constraints.push_back(std::move(row));
  }
  for (std::uint32_t i = 1; i <= inst.items(); ++i) {
    LinearConstraint row;
    for (std::uint32_t k = 1; k <= inst.bins; ++k)
      row.coeffs.emplace_back(layout.x_index(i, k), 1);
    row.rel = Relation::Eq;
    row.rhs = 1;
    model.linear_constraints.push_back(std::move(row));
  }

  Polynomial obj;
  for (std::uint32_t k = 1; k <= inst.bins; ++k)
    obj = obj + Polynomial::var(layout.y_index(k));
  model.objective = std::move(obj);
  return model;
}

// Near half-capacity benchmark: n_items sizes drawn i.i.d. uniformly from the
// integer interval [lo, hi], sorted ascending; one bin per item.
inline BinPackingInstance generate_benchmark(std::uint32_t class_count, std::uint32_t n_items,
                                             std::int64_t lo, std::int64_t hi, std::int64_t capacity,
                                             std::uint64_t seed) {
  if (lo > hi) throw std::invalid_argument("empty size interval");
  if (lo < 1 || hi > capacity) throw std::invalid_argument("size interval must lie within [1, capacity]");
  if (static_cast<std::int64_t>(class_count) != hi - lo + 1)
    throw std::invalid_argument("class_count must equal the number of integers in the interval");
  if (n_items == 0) throw std::invalid_argument("need at least one item");

  Rng rng(seed);
  BinPackingInstance inst;
  inst.capacity = capacity;
  inst.sizes.reserve(n_items);
  for (std::uint32_t i = 0; i < n_items; ++i) inst.sizes.push_back(rng.range(lo, hi));
  std::sort(inst.sizes.begin(), inst.sizes.end());
  inst.bins = n_items;
  inst.seed = seed;
  inst.interval_lo = lo;
  inst.interval_hi = hi;
  inst.class_count = class_count;
  inst.validate();
  return inst;
}

// |G| = n! * prod_j (class size of j)!  -- bin relabelings times independent
// within-class item permutations.
inline BigInt symmetry_group_order(const BinPackingInstance& inst) {
  auto factorial = [](std::uint64_t n) {
    BigInt f = 1;
    for (std::uint64_t k = 2; k <= n; ++k) f *= k;
    return f;
  };
  const SizeBoundaries b = size_boundaries(inst);
  BigInt order = factorial(inst.bins);
  for (std::size_t j = 0; j < b.num_classes(); ++j) order *= factorial(b.class_size(j));
  return order;
}

inline double log10_bigint(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log10 of non-positive value");
  const std::string s = x.str();
  const std::size_t lead_len = std::min<std::size_t>(15, s.size());
  const double lead = std::stod(s.substr(0, lead_len));
  return static_cast<double>(s.size() - lead_len) + std::log10(lead);
}

inline double log10_group_order(const BinPackingInstance& inst) {
  return log10_bigint(symmetry_group_order(inst));
}

// First-fit-decreasing upper bound on the number of bins needed.
inline std::uint32_t ffd_bin_count(const BinPackingInstance& inst) {
  std::vector<std::int64_t> loads;
  for (auto it = inst.sizes.rbegin(); it != inst.sizes.rend(); ++it) {
    bool placed = false;
    for (auto& load : loads) {
      if (load + *it <= inst.capacity) {
        load += *it;
        placed = true;
        break;
      }
    }
    if (!placed) loads.push_back(*it);
  }
  return static_cast<std::uint32_t>(loads.size());
}

// ceil(sum of sizes / capacity), the counting lower bound.
inline std::uint32_t size_sum_lower_bound(const BinPackingInstance& inst) {
  std::int64_t total = 0;
  for (std::int64_t s : inst.sizes) total += s;
  return static_cast<std::uint32_t>((total + inst.capacity - 1) / inst.capacity);
}

inline nlohmann::ordered_json instance_to_json(const BinPackingInstance& inst) {
  nlohmann::ordered_json j;
  j["capacity"] = inst.capacity;
  j["sizes"] = inst.sizes;
  j["bins"] = inst.bins;
  j["seed"] = inst.seed;
  j["interval"] = {inst.interval_lo, inst.interval_hi};
  j["class_count"] = inst.class_count;
  return j;
}

inline void write_instance(const BinPackingInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << instance_to_json(inst).dump(2) << "\n";
}

inline BinPackingInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  BinPackingInstance inst;
  inst.capacity = j.at("capacity").get<std::int64_t>();
  inst.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
  inst.bins = j.at("bins").get<std::uint32_t>();
  inst.seed = j.value("seed", 0ULL);
  if (j.contains("interval")) {
    inst.interval_lo = j["interval"].at(0).get<std::int64_t>();
    inst.interval_hi = j["interval"].at(1).get<std::int64_t>();
  }
  inst.class_count = j.value("class_count", 0U);
  inst.validate();
  return inst;
}

}  // namespace symbreak
