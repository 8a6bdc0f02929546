#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symbreak/layout.hpp"
#include "symbreak/model.hpp"

namespace symbreak {

inline std::string lp_var_name(const VarLayout& layout, VarIndex v) {
  const std::uint32_t row = layout.row_of(v), bin = layout.bin_of(v);
  if (row == 0) return "y_" + std::to_string(bin);
  return "x_" + std::to_string(row) + "_" + std::to_string(bin);
}

struct LpWriteStats {
  std::uint64_t variables = 0;
  std::uint64_t core_rows = 0;       // rows from the linear constraint system
  std::uint64_t side_rows = 0;       // rows from attached breakers
  std::uint64_t quadratic_rows = 0;  // side rows carrying a bracketed part
};

namespace detail {

// Token stream with LP-style line wrapping: lines stay <= 250 characters,
// continuation lines are indented one space.
class LpLine {
 public:
  explicit LpLine(std::ostream& out) : out_(out) {}

  void token(const std::string& t) {
    if (len_ == 0) {
      out_ << ' ' << t;
      len_ = 1 + t.size();
      return;
    }
    if (len_ + 1 + t.size() > kMaxLine) {
      out_ << "\n ";
      len_ = 1;
    } else {
      out_ << ' ';
      ++len_;
    }
    out_ << t;
    len_ += t.size();
  }

  void end() {
    out_ << '\n';
    len_ = 0;
  }

 private:
  static constexpr std::size_t kMaxLine = 250;
  std::ostream& out_;
  std::size_t len_ = 0;
};

inline void emit_coeff(LpLine& line, bool first, std::int64_t c) {
  if (first) {
    if (c < 0) line.token("-");
  } else {
    line.token(c < 0 ? "-" : "+");
  }
  const std::int64_t mag = c < 0 ? -c : c;
  if (mag != 1) line.token(std::to_string(mag));
}

inline void emit_linear_terms(LpLine& line, const VarLayout& layout,
                              const std::vector<std::pair<VarIndex, std::int64_t>>& terms,
                              bool& first) {
  for (const auto& [v, c] : terms) {
    emit_coeff(line, first, c);
    line.token(lp_var_name(layout, v));
    first = false;
  }
}

inline const char* relation_token(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return "<=";
    case Relation::Eq: return "=";
    case Relation::GreaterEq: return ">=";
  }
  return "<=";
}

}  // namespace detail

// LP-format text export. Linear rows are plain; degree-2 side constraints
// render their quadratic part bracketed (`[ x_1_1 ^ 2 - y_1 ^ 2 ] + ... <= 0`).
// Cubic side constraints are rejected. The stream is written row by row, so
// full-scale models never materialise in memory.
inline LpWriteStats export_lp(const IPModel& model, const VarLayout& layout, std::ostream& out) {
  if (model.objective.degree() > 1)
    throw std::invalid_argument("LP export requires a linear objective");
  for (const Polynomial& g : model.side_constraints)
    if (g.degree() > 2)
      throw std::invalid_argument("LP export supports side constraints of degree <= 2 only");
  if (model.domain != std::vector<int>{0, 1})
    throw std::invalid_argument("LP export expects binary variables");

  LpWriteStats stats;
  out << "\\ bin packing model with symmetry breakers\n";
  out << "Minimize\n";
  {
    detail::LpLine line(out);
    line.token("obj:");
    bool first = true;
    for (const auto& [m, c] : model.objective.terms()) {
      if (m.factors.empty()) continue;  // constant offset has no LP syntax; harmless for comparisons
      detail::emit_coeff(line, first, c);
      line.token(lp_var_name(layout, m.factors.front().first));
      first = false;
    }
    if (first) line.token("0");
    line.end();
  }

  out << "Subject To\n";
  std::uint64_t row_id = 0;
  for (const LinearConstraint& row : model.linear_constraints) {
    detail::LpLine line(out);
    line.token("c" + std::to_string(++row_id) + ":");
    bool first = true;
    detail::emit_linear_terms(line, layout, row.coeffs, first);
    line.token(detail::relation_token(row.rel));
    line.token(std::to_string(row.rhs));
    line.end();
    ++stats.core_rows;
  }

  std::uint64_t side_id = 0;
  for (const Polynomial& g : model.side_constraints) {
    std::vector<std::pair<Monomial, std::int64_t>> quad;
    std::vector<std::pair<VarIndex, std::int64_t>> lin;
    std::int64_t constant = 0;
    for (const auto& [m, c] : g.terms()) {
      const std::uint32_t d = m.total_degree();
      if (d == 2) quad.emplace_back(m, c);
      else if (d == 1) lin.emplace_back(m.factors.front().first, c);
      else constant += c;
    }

    detail::LpLine line(out);
    line.token("q" + std::to_string(++side_id) + ":");
    bool first = true;
    if (!quad.empty()) {
      line.token("[");
      for (const auto& [m, c] : quad) {
        detail::emit_coeff(line, first, c);
        first = false;
        if (m.factors.size() == 1) {
          line.token(lp_var_name(layout, m.factors.front().first));
          line.token("^");
          line.token("2");
        } else {
          line.token(lp_var_name(layout, m.factors[0].first));
          line.token("*");
          line.token(lp_var_name(layout, m.factors[1].first));
        }
      }
      line.token("]");
      first = false;
      ++stats.quadratic_rows;
    }
    detail::emit_linear_terms(line, layout, lin, first);
    if (first) line.token("0");
    line.token("<=");
    line.token(std::to_string(-constant));
    line.end();
    ++stats.side_rows;
  }

  out << "Binary\n";
  for (VarIndex v = 0; v < model.num_vars; ++v) {
    out << ' ' << lp_var_name(layout, v) << '\n';
    ++stats.variables;
  }
  out << "End\n";
  return stats;
}

inline LpWriteStats export_lp(const IPModel& model, const VarLayout& layout,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return export_lp(model, layout, out);
}

}  // namespace symbreak
