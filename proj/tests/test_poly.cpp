#include <catch_amalgamated.hpp>

#include <symbreak/poly.hpp>
#include <symbreak/rng.hpp>

using namespace symbreak;

namespace {

Polynomial mono(std::int64_t c, std::initializer_list<std::pair<VarIndex, std::uint32_t>> factors) {
  Monomial m;
  for (const auto& f : factors) m.factors.push_back(f);
  std::sort(m.factors.begin(), m.factors.end());
  return Polynomial::from_terms({{m, c}});
}

// h = 2x + y^2 with x -> x[0], y -> x[1]
Polynomial two_x_plus_y_sq() {
  return 2 * Polynomial::var(0) + Polynomial::var(1, 2);
}

Polynomial random_poly(Rng& rng, std::uint32_t num_vars, std::uint32_t max_terms) {
  Polynomial p;
  const std::uint64_t terms = rng.below(max_terms + 1);
  for (std::uint64_t t = 0; t < terms; ++t) {
    Monomial m;
    for (VarIndex v = 0; v < num_vars; ++v) {
      const std::uint32_t exp = static_cast<std::uint32_t>(rng.below(4));  // 0..3
      if (exp > 0) m.factors.emplace_back(v, exp);
    }
    const std::int64_t coeff = rng.range(-4, 4);
    p = p + Polynomial::from_terms({{m, coeff}});
  }
  return p;
}

Permutation random_perm(Rng& rng, std::uint32_t n) {
  std::vector<VarIndex> image(n);
  for (std::uint32_t i = 0; i < n; ++i) image[i] = i;
  for (std::uint32_t i = n; i > 1; --i)
    std::swap(image[i - 1], image[rng.below(i)]);
  return Permutation::from_image(image);
}

}  // namespace

TEST_CASE("addition keeps canonical form") {
  const Polynomial x0 = Polynomial::var(0);
  CHECK((x0 + (-x0)).is_zero());

  const Polynomial a = 2 * Polynomial::var(0) + Polynomial::var(1, 2);
  const Polynomial b = Polynomial::var(0, 2);
  const Polynomial expected =
      Polynomial::var(0, 2) + 2 * Polynomial::var(0) + Polynomial::var(1, 2);
  CHECK(a + b == expected);

  const Polynomial xy = mono(1, {{0, 1}, {1, 1}});
  CHECK(xy + xy == mono(2, {{0, 1}, {1, 1}}));
}

TEST_CASE("multiplication distributes and annihilates") {
  const Polynomial x0 = Polynomial::var(0), x1 = Polynomial::var(1), x2 = Polynomial::var(2);
  CHECK((x0 + x1) * (x0 - x1) == Polynomial::var(0, 2) - Polynomial::var(1, 2));
  CHECK(((x0 + x1) * Polynomial::zero()).is_zero());
  const Polynomial expected = Polynomial::var(0, 2) + mono(1, {{0, 1}, {1, 1}}) +
                              mono(1, {{0, 1}, {2, 1}}) + mono(1, {{1, 1}, {2, 1}});
  CHECK((x0 + x1) * (x0 + x2) == expected);
}

TEST_CASE("subtraction forms swap-difference inequalities") {
  const Polynomial x0 = Polynomial::var(0), x1 = Polynomial::var(1);
  CHECK((two_x_plus_y_sq() - two_x_plus_y_sq()).is_zero());

  // h(y,x) - h(x,y) for h = 2x + y^2
  const Polynomial g = (2 * x1 + Polynomial::var(0, 2)) - (2 * x0 + Polynomial::var(1, 2));
  const Polynomial expected =
      Polynomial::var(0, 2) - Polynomial::var(1, 2) - 2 * x0 + 2 * x1;
  CHECK(g == expected);

  // same for h = x^3 - 3x
  const Polynomial gc = (Polynomial::var(1, 3) - 3 * x1) - (Polynomial::var(0, 3) - 3 * x0);
  const Polynomial expected_c =
      Polynomial::var(1, 3) - Polynomial::var(0, 3) - 3 * x1 + 3 * x0;
  CHECK(gc == expected_c);
}

TEST_CASE("permutation substitution") {
  const Permutation swap01 = Permutation::transposition(2, 0, 1);

  SECTION("swap maps 2x + y^2 to 2y + x^2") {
    const Polynomial h = two_x_plus_y_sq();
    const Polynomial expected = 2 * Polynomial::var(1) + Polynomial::var(0, 2);
    CHECK(h.apply_permutation(swap01) == expected);
  }

  SECTION("identity fixes everything") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
      const Polynomial p = random_poly(rng, 4, 5);
      CHECK(p.apply_permutation(Permutation::identity(4)) == p);
    }
  }

  SECTION("three-cycle on a product, frozen by hand substitution") {
    // p = x0*x2, cycle 0->1->2->0: x0 becomes x1, x2 becomes x0
    const Polynomial p = mono(1, {{0, 1}, {2, 1}});
    const Permutation cycle = Permutation::from_image({1, 2, 0});
    CHECK(p.apply_permutation(cycle) == mono(1, {{0, 1}, {1, 1}}));
  }

  SECTION("variable outside the permutation domain is reported") {
    const Polynomial p = Polynomial::var(5);
    REQUIRE_THROWS_WITH(p.apply_permutation(swap01),
                        Catch::Matchers::ContainsSubstring("x[5]"));
  }
}

TEST_CASE("exact evaluation") {
  const Polynomial g = Polynomial::var(0, 2) - Polynomial::var(1, 2) -
                       2 * Polynomial::var(0) + 2 * Polynomial::var(1);

  SECTION("the two optima split") {
    CHECK(g.evaluate({1, 0}) == Rational(-1));  // satisfies g <= 0
    CHECK(g.evaluate({0, 1}) == Rational(1));   // violates g <= 0
    CHECK(Polynomial::zero().evaluate({Rational(3, 7)}) == Rational(0));
  }

  SECTION("rational powers are exact") {
    const Polynomial cube = Polynomial::var(0, 3);
    CHECK(cube.evaluate({Rational(2, 3)}) == Rational(8, 27));
  }

  SECTION("missing variable is an error") {
    REQUIRE_THROWS_WITH(g.evaluate({1}), Catch::Matchers::ContainsSubstring("x[1]"));
    REQUIRE_THROWS(g.evaluate_int(std::vector<int>{1}));
  }

  SECTION("integer fast path agrees with rationals") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      const Polynomial p = random_poly(rng, 4, 6);
      std::vector<int> pt(4);
      std::vector<Rational> rpt(4);
      for (int i = 0; i < 4; ++i) {
        pt[i] = static_cast<int>(rng.range(-3, 3));
        rpt[i] = pt[i];
      }
      CHECK(Rational(p.evaluate_int(pt)) == p.evaluate(rpt));
    }
  }
}

TEST_CASE("degree classification") {
  CHECK(Polynomial::zero().classify() == PolyClass::Zero);
  CHECK((Polynomial::var(0) - Polynomial::var(1)).classify() == PolyClass::Linear);
  const Polynomial q = Polynomial::var(0, 2) - Polynomial::var(1, 2) + Polynomial::var(0);
  CHECK(q.classify() == PolyClass::HasQuadratic);
  CHECK(Polynomial::var(2, 3).classify() == PolyClass::Higher);
}

TEST_CASE("canonical text round-trips") {
  const Polynomial g = Polynomial::var(0, 2) - Polynomial::var(1, 2) -
                       2 * Polynomial::var(0) + 2 * Polynomial::var(1);
  CHECK(g.render() == "+1 x[0]^2 -1 x[1]^2 -2 x[0] +2 x[1]");
  CHECK(Polynomial::zero().render() == "0");
  CHECK(Polynomial::parse("0").is_zero());
  CHECK(Polynomial::parse(g.render()) == g);

  const Polynomial with_constant = Polynomial::constant(-7) + Polynomial::var(3);
  CHECK(Polynomial::parse(with_constant.render()) == with_constant);

  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const Polynomial p = random_poly(rng, 5, 6);
    CHECK(Polynomial::parse(p.render()) == p);
  }

  CHECK_THROWS(Polynomial::parse("x[0] banana"));
  CHECK_THROWS(Polynomial::parse("x[0]"));  // factor without coefficient
}

TEST_CASE("algebraic properties on random inputs") {
  Rng rng(101);
  for (int t = 0; t < 60; ++t) {
    const Polynomial p = random_poly(rng, 4, 5);
    const Polynomial q = random_poly(rng, 4, 5);
    const Polynomial r = random_poly(rng, 4, 5);
    CHECK((p + (-p)).is_zero());
    CHECK(p + q == q + p);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
  }
}

TEST_CASE("substitution is evaluation under the permuted assignment") {
  Rng rng(202);
  for (int t = 0; t < 60; ++t) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(3));
    const Polynomial p = random_poly(rng, n, 5);
    const Permutation perm = random_perm(rng, n);
    std::vector<Rational> a(n);
    for (std::uint32_t i = 0; i < n; ++i) a[i] = Rational(rng.range(-5, 5), rng.range(1, 4));
    // assignment composed with the substitution map
    std::vector<Rational> composed(n);
    for (std::uint32_t i = 0; i < n; ++i) composed[i] = a[perm(i)];
    CHECK(p.apply_permutation(perm).evaluate(a) == p.evaluate(composed));
  }
}

TEST_CASE("substitution composes as compose(Q, P)") {
  Rng rng(303);
  for (int t = 0; t < 60; ++t) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(3));
    const Polynomial p = random_poly(rng, n, 5);
    const Permutation P = random_perm(rng, n);
    const Permutation Q = random_perm(rng, n);
    CHECK(p.apply_permutation(P).apply_permutation(Q) ==
          p.apply_permutation(compose(Q, P)));
  }
}
