#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <symbreak/binpack.hpp>
#include <symbreak/breakers.hpp>
#include <symbreak/lp.hpp>
#include <symbreak/solver.hpp>

#include "lp_reader.hpp"

using namespace symbreak;

namespace {

BinPackingInstance equal_items(std::uint32_t m, std::uint32_t n, std::int64_t size = 5,
                               std::int64_t cap = 10) {
  BinPackingInstance inst;
  inst.capacity = cap;
  inst.sizes.assign(m, size);
  inst.bins = n;
  return inst;
}

}  // namespace

TEST_CASE("variable naming follows the layout") {
  const VarLayout layout{2, 3};
  CHECK(lp_var_name(layout, layout.y_index(1)) == "y_1");
  CHECK(lp_var_name(layout, layout.y_index(3)) == "y_3");
  CHECK(lp_var_name(layout, layout.x_index(2, 3)) == "x_2_3");
  for (VarIndex v = 0; v < layout.num_vars(); ++v)
    CHECK(testing::lp_name_to_index(layout, lp_var_name(layout, v)) == v);
}

TEST_CASE("quadratic breaker row renders with a bracketed quadratic part") {
  // one item, one bin: y_1 is variable 0, x_1_1 is variable 1
  const BinPackingInstance inst = equal_items(1, 1);
  IPModel model = build_model(inst);
  const Polynomial h = 2 * Polynomial::var(1) + Polynomial::var(0, 2);
  model.side_constraints.push_back(
      h.apply_permutation(Permutation::transposition(2, 0, 1)) - h);

  std::ostringstream os;
  const LpWriteStats stats = export_lp(model, inst.layout(), os);
  const std::string text = os.str();

  CHECK(stats.variables == 2);
  CHECK(stats.core_rows == 2);
  CHECK(stats.side_rows == 1);
  CHECK(stats.quadratic_rows == 1);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Binary") != std::string::npos);
  CHECK(text.find(" q1: [ - y_1 ^ 2 + x_1_1 ^ 2 ] + 2 y_1 - 2 x_1_1 <= 0") != std::string::npos);
}

TEST_CASE("models without breakers have no quadratic sections") {
  const BinPackingInstance inst = equal_items(2, 2);
  std::ostringstream os;
  const LpWriteStats stats = export_lp(build_model(inst), inst.layout(), os);
  CHECK(stats.quadratic_rows == 0);
  CHECK(os.str().find('[') == std::string::npos);
}

TEST_CASE("lines stay within the length limit") {
  const BinPackingInstance inst = equal_items(100, 2, 1, 100);
  std::ostringstream os;
  export_lp(build_model(inst), inst.layout(), os);
  std::istringstream is(os.str());
  std::string line;
  std::size_t longest = 0;
  while (std::getline(is, line)) longest = std::max(longest, line.size());
  CHECK(longest <= 250);
  CHECK(longest > 200);  // the capacity rows actually exercise wrapping
}

TEST_CASE("cubic side constraints are rejected") {
  const BinPackingInstance inst = equal_items(1, 1);
  IPModel model = build_model(inst);
  model.side_constraints.push_back(Polynomial::var(1, 3));
  std::ostringstream os;
  CHECK_THROWS(export_lp(model, inst.layout(), os));
}

TEST_CASE("exports re-parse into an equivalent model") {
  Rng rng(606);
  const BinPackingInstance inst = equal_items(3, 3);
  const VarLayout layout = inst.layout();
  const IPModel base = build_model(inst);

  SizeProfile profile{"test", 5, 10, 6};
  const Polynomial h = instantiate_template(Template::X2PlusY, profile, layout, rng);
  const BreakerFamily fam =
      generate_family(h, Template::X2PlusY, layout, size_boundaries(inst), profile, rng);
  const IPModel attached = attach(base, fam);

  std::ostringstream os;
  const LpWriteStats stats = export_lp(attached, layout, os);
  std::istringstream is(os.str());
  const testing::LpFile parsed = testing::read_lp(is, layout);

  CHECK(parsed.binary_count == layout.num_vars());
  CHECK(parsed.core_rows == inst.items() + inst.bins);
  CHECK(parsed.side_rows == stats.side_rows);
  CHECK(parsed.model.objective == attached.objective);

  const SolveStats src = solve(attached);
  const SolveStats back = solve(parsed.model);
  REQUIRE(src.feasible);
  REQUIRE(back.feasible);
  CHECK(src.optimum == back.optimum);
  CHECK(src.nodes_explored == back.nodes_explored);
}

TEST_CASE("linear breakers export as plain rows and still re-parse") {
  Rng rng(707);
  const BinPackingInstance inst = equal_items(2, 3);
  const VarLayout layout = inst.layout();
  SizeProfile profile{"test", 4, 8, 5};
  const Polynomial h = instantiate_template(Template::XPlusY, profile, layout, rng);
  const BreakerFamily fam =
      generate_family(h, Template::XPlusY, layout, size_boundaries(inst), profile, rng);
  const IPModel attached = attach(build_model(inst), fam);

  std::ostringstream os;
  const LpWriteStats stats = export_lp(attached, layout, os);
  CHECK(stats.quadratic_rows == 0);

  std::istringstream is(os.str());
  const testing::LpFile parsed = testing::read_lp(is, layout);
  const SolveStats src = solve(attached);
  const SolveStats back = solve(parsed.model);
  CHECK(src.optimum == back.optimum);
}
