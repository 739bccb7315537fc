#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "tradeforge/sts.hpp"

namespace tf = tradeforge;

namespace {

// Independent verification: every pair covered exactly once, counted by
// direct inclusion tests.
bool oracle_verify(const tf::TripleSystem& ts) {
  if (static_cast<std::int64_t>(ts.triples.size()) * 6 != static_cast<std::int64_t>(ts.order) * (ts.order - 1)) {
    return false;
  }
  tf::SignedCollection f(std::max(ts.order, 3), 3);
  for (const auto& tr : ts.triples) f.add(tr, 1);
  for (const auto& [sub, c] : oracle::count_subsets(f, 2)) {
    const bool in_range = sub[0] < ts.order && sub[1] < ts.order;
    if (in_range && c != 1) return false;
    if (!in_range && c != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("generated systems are Steiner for every admissible order up to 31") {
  for (int order : {7, 9, 13, 15, 19, 21, 25, 27, 31}) {
    const auto ts = tf::sts_generate(order);
    CHECK(ts.order == order);
    CHECK(static_cast<std::int64_t>(ts.triples.size()) == static_cast<std::int64_t>(order) * (order - 1) / 6);
    CHECK(tf::verify_sts(ts));
    CHECK(oracle_verify(ts));
  }
}

TEST_CASE("trivial orders") {
  CHECK(tf::sts_generate(1).triples.empty());
  const auto ts3 = tf::sts_generate(3);
  CHECK(ts3.triples.size() == 1);
  CHECK(ts3.triples.count(tf::Block({0, 1, 2})) == 1);
  CHECK(tf::verify_sts(ts3));
}

TEST_CASE("inadmissible orders are rejected") {
  for (int order : {0, 2, 4, 5, 6, 8, 10, 11, 12, 14}) {
    CHECK_THROWS_AS(tf::sts_generate(order), std::invalid_argument);
  }
}

TEST_CASE("reference systems verify") {
  const auto s7 = tf::reference_sts7();
  CHECK(s7.order == 7);
  CHECK(s7.triples.size() == 7);
  CHECK(tf::verify_sts(s7));
  CHECK(oracle_verify(s7));

  const auto s9 = tf::reference_sts9();
  CHECK(s9.order == 9);
  CHECK(s9.triples.size() == 12);
  CHECK(tf::verify_sts(s9));
  CHECK(oracle_verify(s9));
}

TEST_CASE("verify_sts rejects near systems") {
  auto ts = tf::reference_sts7();
  auto damaged = ts;
  damaged.triples.erase(damaged.triples.begin());
  CHECK_FALSE(tf::verify_sts(damaged));  // a pair goes uncovered

  auto swapped = ts;
  swapped.triples.erase(tf::Block({0, 1, 3}));
  swapped.triples.insert(tf::Block({0, 1, 2}));
  CHECK_FALSE(tf::verify_sts(swapped));  // {0,2} covered twice, {1,3} never

  auto wrong_order = ts;
  wrong_order.order = 9;
  CHECK_FALSE(tf::verify_sts(wrong_order));
}

TEST_CASE("sts file round trip") {
  const auto ts = tf::sts_generate(13);
  std::ostringstream out;
  tf::write_sts(out, ts);
  std::istringstream in(out.str());
  const auto back = tf::read_sts(in);
  CHECK(back.order == 13);
  CHECK(back.triples == ts.triples);

  std::ostringstream out1;
  tf::write_sts(out1, ts, true);
  std::istringstream in1(out1.str());
  const auto back1 = tf::read_sts(in1, true);
  CHECK(back1.triples == ts.triples);
}

TEST_CASE("sts reader diagnostics") {
  std::istringstream missing("0 1\n");
  CHECK_THROWS_AS(tf::read_sts(missing), std::runtime_error);
  std::istringstream trailing("0 1 2 3\n");
  CHECK_THROWS_AS(tf::read_sts(trailing), std::runtime_error);
  std::istringstream repeated("0 1 2\n2 1 0\n");
  CHECK_THROWS_AS(tf::read_sts(repeated), std::runtime_error);
  std::istringstream negative("0 1 2\n-1 3 4\n");
  CHECK_THROWS_AS(tf::read_sts(negative), std::runtime_error);
  std::istringstream commented("# a comment\n\n0 1 2\n");
  const auto ts = tf::read_sts(commented);
  CHECK(ts.order == 3);
  CHECK(ts.triples.size() == 1);
}

TEST_CASE("pair partitions") {
  const auto p8 = tf::default_pair_partition(8);
  REQUIRE(p8.pairs.size() == 4);
  CHECK(p8.pairs[0] == std::pair<int, int>{0, 1});
  CHECK(p8.pairs[3] == std::pair<int, int>{6, 7});
  CHECK_NOTHROW(tf::validate_pair_partition(p8, 8));

  CHECK(tf::default_pair_partition(2).pairs.size() == 1);
  CHECK(tf::default_pair_partition(0).pairs.empty());
  CHECK_THROWS_AS(tf::default_pair_partition(5), std::invalid_argument);

  tf::PairPartition bad;
  bad.pairs = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(tf::validate_pair_partition(bad, 4), std::invalid_argument);
  tf::PairPartition wrong_count;
  wrong_count.pairs = {{0, 1}};
  CHECK_THROWS_AS(tf::validate_pair_partition(wrong_count, 4), std::invalid_argument);
  tf::PairPartition out_of_range;
  out_of_range.pairs = {{0, 1}, {2, 4}};
  CHECK_THROWS_AS(tf::validate_pair_partition(out_of_range, 4), std::invalid_argument);
}
