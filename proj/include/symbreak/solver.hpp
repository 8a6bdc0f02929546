#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symbreak/breakers.hpp"
#include "symbreak/model.hpp"

namespace symbreak {

struct SolveStats {
  std::uint64_t nodes_explored = 0;     // one node per variable fixing
  std::uint64_t incumbent_updates = 0;
  bool feasible = false;
  std::int64_t optimum = 0;
  std::vector<int> best;
};

namespace detail {

// Depth-first 0-1 branch and bound with a fixed variable order (flat index
// order: bin-major, y before the x rows of its column). Pruning: min/max
// activity bounds of the linear rows, objective lower bound against the
// incumbent, and polynomial side constraints once fully assigned. Dynamic
// branching heuristics are deliberately absent so node counts isolate the
// effect of attached breakers.
class BranchAndBound {
 public:
  explicit BranchAndBound(const IPModel& model) : model_(model) {
    if (model.domain != std::vector<int>{0, 1})
      throw std::invalid_argument("solver handles binary domains only");
    if (model.objective.degree() > 1)
      throw std::invalid_argument("solver handles linear objectives only");

    obj_coeff_.assign(model.num_vars, 0);
    for (const auto& [m, c] : model.objective.terms()) {
      if (m.factors.empty()) obj_constant_ += c;
      else obj_coeff_[m.factors.front().first] += c;
    }

    rows_of_var_.resize(model.num_vars);
    row_lo_.reserve(model.linear_constraints.size());
    row_hi_.reserve(model.linear_constraints.size());
    for (std::size_t r = 0; r < model.linear_constraints.size(); ++r) {
      std::int64_t lo = 0, hi = 0;
      for (const auto& [v, c] : model.linear_constraints[r].coeffs) {
        rows_of_var_[v].emplace_back(r, c);
        if (c < 0) lo += c;
        else hi += c;
      }
      row_lo_.push_back(lo);
      row_hi_.push_back(hi);
    }

    sides_of_var_.resize(model.num_vars);
    side_unassigned_.reserve(model.side_constraints.size());
    for (std::size_t s = 0; s < model.side_constraints.size(); ++s) {
      const auto vars = model.side_constraints[s].variables();
      for (VarIndex v : vars) sides_of_var_[v].push_back(s);
      side_unassigned_.push_back(static_cast<std::uint32_t>(vars.size()));
    }

    // objective lower bound starts from every variable at its cheaper value
    obj_bound_ = obj_constant_;
    for (std::int64_t c : obj_coeff_) obj_bound_ += std::min<std::int64_t>(0, c);

    values_.assign(model.num_vars, -1);
  }

  SolveStats run() {
    descend(0);
    SolveStats out = stats_;
    return out;
  }

 private:
  void descend(std::uint32_t depth) {
    if (depth == model_.num_vars) {
      // bound pruning guarantees strict improvement here
      stats_.feasible = true;
      stats_.optimum = current_obj_;
      stats_.best.assign(values_.begin(), values_.end());
      ++stats_.incumbent_updates;
      return;
    }
    // descending domain order: opening a bin or placing an item is explored
    // before leaving it empty, so the first descent seeds the incumbent with
    // a greedy packing
    for (int value : {1, 0}) {
      ++stats_.nodes_explored;
      if (assign(depth, value)) descend(depth + 1);
      unassign(depth, value);
    }
  }

  // Fixes variable `v` and reports whether the subtree may still contain an
  // improving feasible completion.
  bool assign(VarIndex v, int value) {
    values_[v] = static_cast<int>(value);
    const std::int64_t c = obj_coeff_[v];
    current_obj_ += c * value;
    obj_bound_ += c * value - std::min<std::int64_t>(0, c);

    bool viable = !(stats_.feasible && obj_bound_ >= stats_.optimum);

    for (const auto& [r, coeff] : rows_of_var_[v]) {
      // the contribution interval [min(0,c), max(0,c)] collapses to c*value
      row_lo_[r] += coeff * value - std::min<std::int64_t>(0, coeff);
      row_hi_[r] += coeff * value - std::max<std::int64_t>(0, coeff);
      if (viable && !row_viable(r)) viable = false;
    }

    if (viable) {
      for (std::size_t s : sides_of_var_[v]) {
        if (--side_unassigned_[s] == 0 &&
            model_.side_constraints[s].evaluate_int(values_) > 0)
          viable = false;
      }
    } else {
      for (std::size_t s : sides_of_var_[v]) --side_unassigned_[s];
    }
    return viable;
  }

  void unassign(VarIndex v, int value) {
    for (std::size_t s : sides_of_var_[v]) ++side_unassigned_[s];
    for (const auto& [r, coeff] : rows_of_var_[v]) {
      row_lo_[r] -= coeff * value - std::min<std::int64_t>(0, coeff);
      row_hi_[r] -= coeff * value - std::max<std::int64_t>(0, coeff);
    }
    const std::int64_t c = obj_coeff_[v];
    current_obj_ -= c * value;
    obj_bound_ -= c * value - std::min<std::int64_t>(0, c);
    values_[v] = -1;
  }

  bool row_viable(std::size_t r) const {
    const LinearConstraint& row = model_.linear_constraints[r];
    switch (row.rel) {
      case Relation::LessEq: return row_lo_[r] <= row.rhs;
      case Relation::GreaterEq: return row_hi_[r] >= row.rhs;
      case Relation::Eq: return row_lo_[r] <= row.rhs && row_hi_[r] >= row.rhs;
    }
    return false;
  }

  const IPModel& model_;
  std::vector<std::int64_t> obj_coeff_;
  std::int64_t obj_constant_ = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows_of_var_;
  std::vector<std::int64_t> row_lo_, row_hi_;  // activity bounds given fixings
  std::vector<std::vector<std::size_t>> sides_of_var_;
  std::vector<std::uint32_t> side_unassigned_;
  std::vector<int> values_;
  std::int64_t current_obj_ = 0;
  std::int64_t obj_bound_ = 0;
  SolveStats stats_;
};

}  // namespace detail

inline SolveStats solve(const IPModel& model) {
  return detail::BranchAndBound(model).run();
}

struct CompareRow {
  std::string config_id;
  std::string template_label;   // empty for the baseline
  std::string profile_label;
  SolveStats stats;
  double relative_nodes_pct = 100.0;
};

// Baseline first, then one row per family on the same instance; node counts
// are reported relative to the baseline at 100%.
inline std::vector<CompareRow> compare(const IPModel& model,
                                       const std::vector<BreakerFamily>& families) {
  std::vector<CompareRow> rows;
  CompareRow base;
  base.config_id = "baseline";
  base.stats = solve(model);
  base.relative_nodes_pct = 100.0;
  rows.push_back(base);
  const double base_nodes = static_cast<double>(std::max<std::uint64_t>(1, base.stats.nodes_explored));
  for (const BreakerFamily& fam : families) {
    CompareRow row;
    row.config_id = std::string(to_string(fam.tmpl)) + ":" + fam.profile.label;
    row.template_label = to_string(fam.tmpl);
    row.profile_label = fam.profile.label;
    row.stats = solve(attach(model, fam));
    row.relative_nodes_pct = 100.0 * static_cast<double>(row.stats.nodes_explored) / base_nodes;
    rows.push_back(row);
  }
  return rows;
}

inline void write_stats_csv(const std::vector<CompareRow>& rows, std::ostream& out) {
  out << "config_id,template,profile,nodes,relative_nodes_pct,optimum,incumbent_updates\n";
  for (const CompareRow& r : rows) {
    out << r.config_id << ',' << r.template_label << ',' << r.profile_label << ','
        << r.stats.nodes_explored << ',' << std::fixed << std::setprecision(2)
        << r.relative_nodes_pct << ','
        << (r.stats.feasible ? std::to_string(r.stats.optimum) : "infeasible") << ','
        << r.stats.incumbent_updates << "\n";
  }
}

inline void write_stats_csv(const std::vector<CompareRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_stats_csv(rows, out);
}

}  // namespace symbreak
