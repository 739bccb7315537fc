#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "tradeforge/trades.hpp"

namespace tf = tradeforge;

namespace {

bool oracle_is_trade(const tf::SignedCollection& f, int t) {
  for (const auto& [sub, c] : oracle::count_subsets(f, t)) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("minimal trade expands to the signed product") {
  const auto f = tf::minimal_trade(6, {0, 1, 2}, {3, 4, 5});
  CHECK(f.support_size() == 8);
  CHECK(f.coeff(tf::Block({0, 1, 2})) == 1);
  CHECK(f.coeff(tf::Block({0, 1, 5})) == -1);
  CHECK(f.coeff(tf::Block({0, 2, 4})) == -1);
  CHECK(f.coeff(tf::Block({0, 4, 5})) == 1);
  CHECK(f.coeff(tf::Block({1, 2, 3})) == -1);
  CHECK(f.coeff(tf::Block({1, 3, 5})) == 1);
  CHECK(f.coeff(tf::Block({2, 3, 4})) == 1);
  CHECK(f.coeff(tf::Block({3, 4, 5})) == -1);
  CHECK(oracle_is_trade(f, 2));
  CHECK(tf::volume(f).value == 4);
  CHECK(tf::foundation(f).size() == 6);
  CHECK(tf::is_simple(f));
}

TEST_CASE("minimal trade respects positional pairing") {
  // same six points, different pairing, different blocks
  const auto f = tf::minimal_trade(10, {3, 4, 6}, {8, 7, 9});
  CHECK(f.coeff(tf::Block({3, 4, 6})) == 1);
  CHECK(f.coeff(tf::Block({4, 6, 8})) == -1);  // b in position 0 only
  CHECK(f.coeff(tf::Block({7, 8, 9})) == -1);  // all three b's
  CHECK(f.coeff(tf::Block({3, 7, 9})) == 1);   // b's in positions 1 and 2
  const auto g = tf::minimal_trade(10, {3, 4, 6}, {7, 8, 9});
  CHECK_FALSE(f == g);
  CHECK(oracle_is_trade(f, 2));
  CHECK(oracle_is_trade(g, 2));
}

TEST_CASE("minimal trade rejects bad input") {
  CHECK_THROWS_AS(tf::minimal_trade(6, {0, 1, 2}, {2, 4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(tf::minimal_trade(6, {0, 1, 1}, {3, 4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(tf::minimal_trade(5, {0, 1, 2}, {3, 4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(tf::minimal_trade(6, {0, 1, -1}, {3, 4, 5}), std::invalid_argument);
}

TEST_CASE("triangle bundle matches the hand expansion") {
  const auto lab = tf::default_labelling(6);
  const auto f = tf::cycle_trade(tf::IndexCycle{{0, 1, 2}}, lab);
  CHECK(f.support_size() == 12);
  CHECK(tf::volume(f).value == 6);
  CHECK(tf::is_simple(f));
  CHECK(oracle_is_trade(f, 2));
  // edge (0,1) contributes +{a0,b0,a1} = {0,3,1} and +{a0,b0,b1} = {0,3,4}
  CHECK(f.coeff(tf::Block({0, 1, 3})) == 1);
  CHECK(f.coeff(tf::Block({0, 3, 4})) == 1);
  // and -{a1,b1,a0} = {1,4,0}, -{a1,b1,b0} = {1,4,3}
  CHECK(f.coeff(tf::Block({0, 1, 4})) == -1);
  CHECK(f.coeff(tf::Block({1, 3, 4})) == -1);
}

TEST_CASE("reversing a walk negates its bundle") {
  const auto lab = tf::default_labelling(14);
  const auto fwd = tf::cycle_trade(tf::IndexCycle{{0, 2, 5, 3}}, lab);
  const auto rev = tf::cycle_trade(tf::IndexCycle{{3, 5, 2, 0}}, lab);
  CHECK(rev == -fwd);
  CHECK(oracle_is_trade(fwd, 2));
}

TEST_CASE("a single directed edge is not a trade") {
  // the pair imbalance only telescopes around a closed walk; one edge leaves
  // +2 on {a_i, b_i} and -2 on {a_j, b_j}
  const auto lab = tf::default_labelling(6);
  tf::ClosedWalk w;
  w.edges = {{0, 1}, {1, 0}};  // closed, but the undirected edge repeats
  CHECK_THROWS_AS(tf::cycle_trade(w, lab), std::invalid_argument);

  // build the 4 blocks of one edge by hand and count pairs
  tf::SignedCollection f(6, 3);
  f.add(tf::Block::of({0, 3, 1}), 1);
  f.add(tf::Block::of({0, 3, 4}), 1);
  f.add(tf::Block::of({1, 4, 0}), -1);
  f.add(tf::Block::of({1, 4, 3}), -1);
  const auto counts = oracle::count_subsets(f, 2);
  CHECK(counts.at({0, 3}) == 2);
  CHECK(counts.at({1, 4}) == -2);
}

TEST_CASE("walk validation") {
  const auto lab = tf::default_labelling(10);
  tf::ClosedWalk open;
  open.edges = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(tf::cycle_trade(open, lab), std::invalid_argument);
  tf::ClosedWalk skip;
  skip.edges = {{0, 1}, {2, 0}};  // edges do not chain
  CHECK_THROWS_AS(tf::cycle_trade(skip, lab), std::invalid_argument);
  tf::ClosedWalk loop;
  loop.edges = {{0, 0}};
  CHECK_THROWS_AS(tf::cycle_trade(loop, lab), std::invalid_argument);
  tf::ClosedWalk range;
  range.edges = {{0, 5}, {5, 0}};
  CHECK_THROWS_AS(tf::cycle_trade(range, lab), std::invalid_argument);
  CHECK_THROWS_AS(tf::cycle_trade(tf::IndexCycle{{0, 1}}, lab), std::invalid_argument);
  CHECK_THROWS_AS(tf::cycle_trade(tf::IndexCycle{{0, 1, 2, 1}}, lab), std::invalid_argument);
  CHECK_THROWS_AS(tf::cycle_trade(tf::IndexCycle{{0, 1, 2, 3, 4, 5}}, tf::default_labelling(10)),
                  std::invalid_argument);  // m > v/2
}

TEST_CASE("ten-block trade equals its three-rotation sum") {
  const auto lab = tf::default_labelling(10);
  const auto f = tf::v10_trade({1, 2, 4}, lab);
  auto sum = tf::minimal_trade(10, {1, 2, 4}, {6, 7, 9});
  sum += tf::minimal_trade(10, {1, 2, 4}, {7, 9, 6});
  sum -= tf::minimal_trade(10, {1, 2, 4}, {9, 6, 7});
  CHECK(f == sum);
  CHECK(f.support_size() == 20);  // all 3-subsets of the foundation
  CHECK(tf::volume(f).value == 10);
  CHECK(tf::volume(f).balanced);
  CHECK(tf::foundation(f) == std::set<int>{1, 2, 4, 6, 7, 9});
  CHECK(tf::is_simple(f));
  CHECK(oracle_is_trade(f, 2));
}

TEST_CASE("ten-block trades overlap in 0 or 4 blocks") {
  const auto lab = tf::default_labelling(10);
  std::vector<tf::OrderedTriple> alphas;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int l = j + 1; l < 5; ++l) alphas.push_back({i, j, l});
  REQUIRE(alphas.size() == 10);
  for (std::size_t x = 0; x < alphas.size(); ++x) {
    for (std::size_t y = x + 1; y < alphas.size(); ++y) {
      const auto fx = tf::v10_trade(alphas[x], lab);
      const auto fy = tf::v10_trade(alphas[y], lab);
      int shared = 0;
      for (const auto& [b, c] : fx.entries()) shared += fy.coeff(b) != 0 ? 1 : 0;
      CHECK((shared == 0 || shared == 4));
    }
  }
}

TEST_CASE("v10_trade validation") {
  const auto lab10 = tf::default_labelling(10);
  CHECK_THROWS_AS(tf::v10_trade({2, 1, 4}, lab10), std::invalid_argument);
  CHECK_THROWS_AS(tf::v10_trade({0, 1, 5}, lab10), std::invalid_argument);
  CHECK_THROWS_AS(tf::v10_trade({0, 1, 2}, tf::Labelling(8, {0, 1, 2, 3}, {4, 5, 6, 7})),
                  std::invalid_argument);
  CHECK_NOTHROW(tf::v10_trade({0, 1, 2}, tf::default_labelling(6)));
}

TEST_CASE("companion rule pinned examples") {
  CHECK(tf::ak_companion_triple({0, 1, 2}, 6) == tf::OrderedTriple{5, 4, 3});
  CHECK(tf::ak_companion_triple({0, 1, 3}, 6) == tf::OrderedTriple{5, 2, 4});
  CHECK(tf::ak_companion_triple({0, 1, 2}, 10) == tf::OrderedTriple{5, 4, 3});
  // successor of the top element must exist
  CHECK_THROWS_AS(tf::ak_companion_triple({0, 1, 5}, 6), std::domain_error);
  // b2=4 and b1=5 fit, but nothing above a0=1 is left for b0
  CHECK_THROWS_AS(tf::ak_companion_triple({1, 2, 3}, 6), std::domain_error);
  CHECK_THROWS_AS(tf::ak_companion_triple({0, 2, 1}, 6), std::invalid_argument);

  const auto f = tf::ak_companion(tf::Block({0, 1, 2}), 6);
  CHECK(f == tf::minimal_trade(6, {0, 1, 2}, {5, 4, 3}));
  CHECK(oracle_is_trade(f, 2));
}

TEST_CASE("every trade constructor meets the volume and foundation floor") {
  const auto lab = tf::default_labelling(10);
  const std::vector<tf::SignedCollection> outputs = {
      tf::minimal_trade(10, {0, 1, 2}, {3, 4, 5}),
      tf::cycle_trade(tf::IndexCycle{{0, 1, 2}}, lab),
      tf::cycle_trade(tf::IndexCycle{{0, 1, 2, 3}}, lab),
      tf::cycle_trade(tf::IndexCycle{{4, 0, 3, 1, 2}}, lab),
      tf::v10_trade({0, 2, 3}, lab),
      tf::ak_companion(tf::Block({0, 2, 4}), 10),
  };
  for (const auto& f : outputs) {
    CHECK(oracle_is_trade(f, 2));
    CHECK(tf::volume(f).value >= 4);
    CHECK(tf::volume(f).balanced);
    CHECK(tf::foundation(f).size() >= 6);
  }
  // the minimal trade attains both bounds
  CHECK(tf::volume(outputs[0]).value == 4);
  CHECK(tf::foundation(outputs[0]).size() == 6);
}
