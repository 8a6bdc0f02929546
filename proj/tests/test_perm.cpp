#include <catch_amalgamated.hpp>

#include <symbreak/layout.hpp>
#include <symbreak/perm.hpp>
#include <symbreak/rng.hpp>

using namespace symbreak;

TEST_CASE("layout flattening round-trips") {
  const VarLayout layout{3, 4};  // m=3 items, n=4 bins
  REQUIRE(layout.num_vars() == 16);
  for (VarIndex v = 0; v < layout.num_vars(); ++v) {
    const std::uint32_t row = layout.row_of(v), bin = layout.bin_of(v);
    if (row == 0) {
      CHECK(layout.is_y(v));
      CHECK(layout.y_index(bin) == v);
    } else {
      CHECK_FALSE(layout.is_y(v));
      CHECK(layout.x_index(row, bin) == v);
    }
  }
  CHECK(layout.y_index(1) == 0);
  CHECK(layout.x_index(1, 1) == 1);
  CHECK(layout.y_index(2) == 4);
  CHECK_THROWS(layout.x_index(4, 1));
  CHECK_THROWS(layout.y_index(5));
}

TEST_CASE("group operations") {
  Rng rng(5);
  std::vector<VarIndex> image = {3, 1, 0, 2, 4};
  const Permutation p = Permutation::from_image(image);
  const Permutation id = Permutation::identity(5);

  CHECK(compose(p, inverse(p)) == id);
  CHECK(compose(inverse(p), p) == id);
  CHECK(compose(id, p) == p);
  CHECK(compose(p, id) == p);
  CHECK_THROWS(compose(p, Permutation::identity(4)));

  SECTION("composition is function composition") {
    const Permutation a = Permutation::transposition(3, 0, 1);
    const Permutation b = Permutation::transposition(3, 1, 2);
    const Permutation c = compose(a, b);
    for (VarIndex i = 0; i < 3; ++i) CHECK(c(i) == a(b(i)));
    // frozen: swap01 after swap12 is the cycle 0->1->2->0
    CHECK(c(0) == 1);
    CHECK(c(1) == 2);
    CHECK(c(2) == 0);
  }

  SECTION("bijection check rejects bad images") {
    CHECK_THROWS(Permutation::from_image({0, 0, 1}));
    CHECK_THROWS(Permutation::from_image({0, 3, 1}));
  }

  SECTION("moved-point dump") {
    CHECK(Permutation::transposition(4, 1, 3).dump_moved() == "1 -> 3\n3 -> 1\n");
    CHECK(id.dump_moved().empty());
  }
}

TEST_CASE("bin transposition swaps whole columns") {
  const VarLayout layout{1, 2};  // m=1, n=2: vars y1 x11 y2 x12
  const Permutation t = bin_transposition(layout, 2);
  // frozen from the 2x2 Kronecker expansion: (0<->2, 1<->3)
  CHECK(t(0) == 2);
  CHECK(t(1) == 3);
  CHECK(t(2) == 0);
  CHECK(t(3) == 1);
  CHECK(compose(t, t) == Permutation::identity(4));
  CHECK_THROWS(bin_transposition(layout, 1));
  CHECK_THROWS(bin_transposition(layout, 3));

  SECTION("columns move whole: y goes to y, x goes to x") {
    const VarLayout big{4, 5};
    for (std::uint32_t k = 2; k <= 5; ++k) {
      const Permutation b = bin_transposition(big, k);
      for (const auto& [i, j] : b.moved()) {
        CHECK(big.is_y(i) == big.is_y(j));
        CHECK(big.row_of(i) == big.row_of(j));
      }
    }
  }
}

TEST_CASE("item transposition swaps equal-size rows in every column") {
  SizeBoundaries both_equal{{1, 3}};  // two items, one class
  const VarLayout layout{2, 1};       // vars y1 x11 x21
  const Permutation t = item_transposition(layout, both_equal, 0, 2);
  CHECK(t(0) == 0);
  CHECK(t(1) == 2);
  CHECK(t(2) == 1);
  CHECK(compose(t, t) == Permutation::identity(3));

  SECTION("swapping across classes is refused") {
    SizeBoundaries two_classes{{1, 2, 3}};
    CHECK_THROWS(item_transposition(layout, two_classes, 0, 2));
  }

  SECTION("singleton class admits no swap at all") {
    SizeBoundaries two_classes{{1, 2, 3}};
    for (std::uint32_t k = 1; k <= 2; ++k) {
      CHECK_THROWS(item_transposition(layout, two_classes, 0, k));
      CHECK_THROWS(item_transposition(layout, two_classes, 1, k));
    }
  }
}

TEST_CASE("generator enumeration covers both families") {
  const VarLayout layout{4, 3};            // m=4, n=3
  SizeBoundaries b{{1, 3, 5}};             // classes {1,2} and {3,4}
  CHECK(generator_count(layout, b) == 2 + 1 + 1);
  const auto gens = all_generators(layout, b);
  REQUIRE(gens.size() == 4);
  // first the bin swaps (1 k), then per class the item swaps (i_j k)
  CHECK(gens[0] == bin_transposition(layout, 2));
  CHECK(gens[1] == bin_transposition(layout, 3));
  CHECK(gens[2] == item_transposition(layout, b, 0, 2));
  CHECK(gens[3] == item_transposition(layout, b, 1, 4));
}

TEST_CASE("random generator products") {
  const VarLayout layout{4, 3};
  SizeBoundaries b{{1, 3, 5}};

  SECTION("a single draw is a transposition from one family") {
    Rng rng(17);
    const Permutation p = random_generator_product(layout, b, 1, rng);
    const std::size_t moved = p.moved().size();
    CHECK((moved == 2 * (layout.items + 1) || moved == 2 * layout.bins));
    CHECK(compose(p, p) == Permutation::identity(layout.num_vars()));
  }

  SECTION("fixed seed reproduces the permutation") {
    Rng r1(99), r2(99);
    const Permutation a = random_generator_product(layout, b, 50, r1);
    const Permutation c = random_generator_product(layout, b, 50, r2);
    CHECK(a == c);
  }

  SECTION("products preserve the y-row/x-row split") {
    Rng rng(123);
    for (int t = 0; t < 25; ++t) {
      const Permutation p = random_generator_product(layout, b, 50, rng);
      for (const auto& [i, j] : p.moved()) {
        CHECK(layout.is_y(i) == layout.is_y(j));
      }
    }
  }

  SECTION("length must be positive and generators must exist") {
    Rng rng(1);
    CHECK_THROWS(random_generator_product(layout, b, 0, rng));
    const VarLayout tiny{1, 1};
    SizeBoundaries single{{1, 2}};
    CHECK_THROWS(random_generator_product(tiny, single, 1, rng));
  }
}

TEST_CASE("bin and item transpositions commute") {
  const VarLayout layout{5, 4};
  SizeBoundaries b{{1, 4, 6}};  // classes {1,2,3} and {4,5}
  Rng rng(31);
  std::vector<Permutation> bins, items;
  for (std::uint32_t k = 2; k <= 4; ++k) bins.push_back(bin_transposition(layout, k));
  items.push_back(item_transposition(layout, b, 0, 2));
  items.push_back(item_transposition(layout, b, 0, 3));
  items.push_back(item_transposition(layout, b, 1, 5));
  for (const Permutation& p : bins)
    for (const Permutation& q : items) CHECK(compose(p, q) == compose(q, p));
}
