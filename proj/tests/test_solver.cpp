#include <catch_amalgamated.hpp>

#include <sstream>

#include <symbreak/binpack.hpp>
#include <symbreak/breakers.hpp>
#include <symbreak/solver.hpp>
#include <symbreak/verify.hpp>

using namespace symbreak;

namespace {

IPModel toy_model() {
  IPModel m;
  m.num_vars = 2;
  m.domain = {0, 1};
  LinearConstraint row;
  row.coeffs = {{0, 1}, {1, 1}};
  row.rel = Relation::GreaterEq;
  row.rhs = 1;
  m.linear_constraints.push_back(row);
  m.objective = Polynomial::var(0) + Polynomial::var(1);
  return m;
}

BinPackingInstance random_instance(Rng& rng, std::uint32_t max_m, std::uint32_t max_n) {
  for (;;) {
    BinPackingInstance inst;
    inst.capacity = rng.range(5, 10);
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.below(max_m - 1));
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(max_n - 1));
    for (std::uint32_t i = 0; i < m; ++i) inst.sizes.push_back(rng.range(1, inst.capacity));
    std::sort(inst.sizes.begin(), inst.sizes.end());
    inst.bins = n;
    if (ffd_bin_count(inst) <= n) return inst;  // keep the model feasible
  }
}

}  // namespace

TEST_CASE("toy problem solves to its known optimum") {
  const SolveStats stats = solve(toy_model());
  REQUIRE(stats.feasible);
  CHECK(stats.optimum == 1);
  CHECK(stats.best.size() == 2);
  CHECK(stats.best[0] + stats.best[1] >= 1);
}

TEST_CASE("attaching the linear swap breaker does not grow the tree") {
  const IPModel base = toy_model();
  BreakerFamily fam;
  fam.breakers = {Polynomial::var(1) - Polynomial::var(0)};  // y - x <= 0
  const IPModel cut = attach(base, fam);

  const SolveStats without = solve(base);
  const SolveStats with = solve(cut);
  REQUIRE(with.feasible);
  CHECK(with.optimum == without.optimum);
  CHECK(with.nodes_explored <= without.nodes_explored);
  // the surviving optimum is (1,0)
  CHECK(with.best == std::vector<int>{1, 0});
}

TEST_CASE("contradictory rows report infeasibility") {
  IPModel m;
  m.num_vars = 1;
  m.domain = {0, 1};
  m.objective = Polynomial::var(0);
  LinearConstraint ge;
  ge.coeffs = {{0, 1}};
  ge.rel = Relation::GreaterEq;
  ge.rhs = 1;
  LinearConstraint le;
  le.coeffs = {{0, 1}};
  le.rel = Relation::LessEq;
  le.rhs = 0;
  m.linear_constraints = {ge, le};
  const SolveStats stats = solve(m);
  CHECK_FALSE(stats.feasible);
}

TEST_CASE("solver preconditions") {
  IPModel m = toy_model();
  m.domain = {0, 1, 2};
  CHECK_THROWS(solve(m));

  IPModel q = toy_model();
  q.objective = Polynomial::var(0, 2);
  CHECK_THROWS(solve(q));
}

TEST_CASE("branch and bound agrees with both oracles on random instances") {
  Rng rng(4242);
  for (int t = 0; t < 15; ++t) {
    const BinPackingInstance inst = random_instance(rng, 4, 3);
    const IPModel model = build_model(inst);
    const SolveStats stats = solve(model);
    REQUIRE(stats.feasible);

    const EnumOptimum lattice = enumerate_optimum(model, false);
    REQUIRE(lattice.feasible);
    CHECK(stats.optimum == lattice.value);
    CHECK(stats.optimum == packing_min_bins(inst));
    CHECK(model.satisfies_linear(stats.best));
  }
}

TEST_CASE("attached families never change the reported optimum") {
  Rng rng(9001);
  for (int t = 0; t < 8; ++t) {
    const BinPackingInstance inst = random_instance(rng, 4, 3);
    const IPModel model = build_model(inst);
    const VarLayout layout = inst.layout();
    const SizeBoundaries b = size_boundaries(inst);
    const SolveStats base = solve(model);

    SizeProfile profile{"test", 4, 8, 6};
    for (Template tmpl : {Template::XY, Template::X2PlusY, Template::XPlusY}) {
      const Polynomial h = instantiate_template(tmpl, profile, layout, rng);
      const BreakerFamily fam = generate_family(h, tmpl, layout, b, profile, rng);
      const SolveStats with = solve(attach(model, fam));
      REQUIRE(with.feasible);
      CHECK(with.optimum == base.optimum);
    }
  }
}

TEST_CASE("identical inputs give identical statistics") {
  Rng rng(77);
  const BinPackingInstance inst = random_instance(rng, 5, 3);
  const IPModel model = build_model(inst);
  const SolveStats a = solve(model);
  const SolveStats b = solve(model);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.incumbent_updates == b.incumbent_updates);
  CHECK(a.optimum == b.optimum);
  CHECK(a.best == b.best);
}

TEST_CASE("configuration comparison table") {
  const IPModel model = toy_model();

  SECTION("no families yields a single baseline row") {
    const auto rows = compare(model, {});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].config_id == "baseline");
    CHECK(rows[0].relative_nodes_pct == 100.0);
  }

  SECTION("an empty family duplicates the baseline") {
    BreakerFamily empty;
    empty.tmpl = Template::X;
    empty.profile = profile_few_few();
    const auto rows = compare(model, {empty});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].stats.nodes_explored == rows[0].stats.nodes_explored);
    CHECK(rows[1].relative_nodes_pct == 100.0);
    CHECK(rows[1].stats.optimum == rows[0].stats.optimum);
  }

  SECTION("csv layout") {
    BreakerFamily fam;
    fam.tmpl = Template::XY;
    fam.profile = profile_few_few();
    fam.breakers = {Polynomial::var(1) - Polynomial::var(0)};
    std::ostringstream os;
    write_stats_csv(compare(model, {fam}), os);
    const std::string csv = os.str();
    CHECK(csv.find("config_id,template,profile,nodes,relative_nodes_pct,optimum,incumbent_updates\n") == 0);
    CHECK(csv.find("baseline,,,") != std::string::npos);
    CHECK(csv.find("xy:few_few,xy,few_few,") != std::string::npos);
  }
}
