#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbreak {

using VarIndex = std::uint32_t;

// Flattened layout of the (m+1) x n variable matrix: row 0 of every column
// holds the bin-use variable y_k, rows 1..m hold the assignment variables
// x_{ik}. Column-major, so column k occupies indices [(k-1)(m+1), k(m+1)).
struct VarLayout {
  std::uint32_t items = 0;  // m
  std::uint32_t bins = 0;   // n

  std::uint32_t num_vars() const { return bins * (items + 1); }

  VarIndex y_index(std::uint32_t k) const {
    check_bin(k);
    return (k - 1) * (items + 1);
  }

  VarIndex x_index(std::uint32_t i, std::uint32_t k) const {
    check_bin(k);
    if (i < 1 || i > items)
      throw std::out_of_range("item index " + std::to_string(i) + " not in 1.." +
                              std::to_string(items));
    return (k - 1) * (items + 1) + i;
  }

  bool is_y(VarIndex v) const { return v % (items + 1) == 0; }

  // bin in 1..n
  std::uint32_t bin_of(VarIndex v) const { return v / (items + 1) + 1; }

  // 0 for a y variable, otherwise the item index in 1..m
  std::uint32_t row_of(VarIndex v) const { return v % (items + 1); }

 private:
  void check_bin(std::uint32_t k) const {
    if (k < 1 || k > bins)
      throw std::out_of_range("bin index " + std::to_string(k) + " not in 1.." +
                              std::to_string(bins));
  }
};

// Partition of the ascending item sizes into maximal equal-size runs,
// recorded as 1-based indices i_1 < ... < i_{l+1} with i_1 = 1 and
// i_{l+1} = m+1. Items within one run are interchangeable.
struct SizeBoundaries {
  std::vector<std::uint32_t> bounds;

  std::size_t num_classes() const {
    return bounds.empty() ? 0 : bounds.size() - 1;
  }
  std::uint32_t class_begin(std::size_t j) const { return bounds.at(j); }
  std::uint32_t class_end(std::size_t j) const { return bounds.at(j + 1); }
  std::uint32_t class_size(std::size_t j) const {
    return bounds.at(j + 1) - bounds.at(j);
  }
};

}  // namespace symbreak
