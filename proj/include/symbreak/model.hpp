#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "symbreak/poly.hpp"

namespace symbreak {

enum class Relation { LessEq, Eq, GreaterEq };

struct LinearConstraint {
  std::vector<std::pair<VarIndex, std::int64_t>> coeffs;  // sparse, ascending var
  Relation rel = Relation::LessEq;
  std::int64_t rhs = 0;

  std::int64_t lhs_at(std::span<const int> point) const {
    std::int64_t s = 0;
    for (const auto& [v, c] : coeffs) s += c * point[v];
    return s;
  }

  bool satisfied_at(std::span<const int> point) const {
    const std::int64_t s = lhs_at(point);
    switch (rel) {
      case Relation::LessEq: return s <= rhs;
      case Relation::Eq: return s == rhs;
      case Relation::GreaterEq: return s >= rhs;
    }
    return false;
  }
};

// Integer program: minimise a polynomial objective over linear constraints,
// every variable ranging over the shared finite value set `domain`, plus
// polynomial side constraints p <= 0 (the attached symmetry breakers).
struct IPModel {
  std::uint32_t num_vars = 0;
  Polynomial objective;
  std::vector<LinearConstraint> linear_constraints;
  std::vector<int> domain;  // ascending, e.g. {0, 1}
  std::vector<Polynomial> side_constraints;

  bool satisfies_linear(std::span<const int> point) const {
    for (const auto& c : linear_constraints)
      if (!c.satisfied_at(point)) return false;
    return true;
  }

  bool satisfies_side(std::span<const int> point) const {
    for (const auto& p : side_constraints)
      if (p.evaluate_int(point) > 0) return false;
    return true;
  }
};

}  // namespace symbreak
