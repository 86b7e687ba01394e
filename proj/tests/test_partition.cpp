#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tuhf/partition.hpp"

using namespace tuhf;

namespace {

OrderedPartition blocks(std::vector<std::vector<Index>> b) { return OrderedPartition::from_blocks(b); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(blocks({{1, 3}, {2, 4}}).block_count() == 2);
  CHECK(code_of([] { blocks({{1, 4}, {2, 3}}); }) == ErrorCode::RankOrderViolation);
  CHECK(code_of([] { blocks({{1}, {2, 3, 4}}); }) == ErrorCode::UnequalBlockSizes);
  CHECK(code_of([] { blocks({{1, 2}, {2, 3}}); }) == ErrorCode::InvalidAssignment);
  try {
    blocks({{1, 4}, {2, 3}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1, 2, 2)") != std::string::npos);
  }
}

TEST_CASE("accessors") {
  const auto p = blocks({{1, 2, 5, 6}, {3, 4, 7, 8}});
  CHECK(p.block_size() == 4);
  CHECK(p.element_at(2, 3) == 7);
  CHECK(p.rank_of(6) == 4);
  CHECK(p.block_of(4) == 2);
}

TEST_CASE("parse and serialize round trip") {
  const auto p = OrderedPartition::parse("m=6 n=3 blocks=1,4;2,5;3,6");
  CHECK(p == blocks({{1, 4}, {2, 5}, {3, 6}}));
  CHECK(OrderedPartition::parse(p.to_string()) == p);
  CHECK(code_of([] { OrderedPartition::parse("m=4 n=2 blocks=1,x;2,3"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { OrderedPartition::parse("m=5 n=2 blocks=1,3;2,4"); }) == ErrorCode::ParseError);
}

TEST_CASE("compare") {
  const auto nest = blocks({{1, 2}, {3, 4}}), stdp = blocks({{1, 3}, {2, 4}});
  CHECK(compare(nest, stdp) == Ordering::Less);
  CHECK(compare(stdp, nest) == Ordering::Greater);
  CHECK(compare(nest, nest) == Ordering::Equal);
  CHECK(code_of([&] { compare(nest, blocks({{1, 2, 3, 4, 5, 6}})); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("restrict_prefix") {
  CHECK(restrict_prefix(blocks({{1, 3}, {2, 4}}), 2).blocks() == std::vector<std::vector<Index>>{{1}, {2}});
  const auto p = blocks({{1, 2, 5, 6}, {3, 4, 7, 8}});
  CHECK(restrict_prefix(p, 8).blocks() == std::vector<std::vector<Index>>{{1, 2, 5, 6}, {3, 4, 7, 8}});
  const auto r = restrict_prefix(p, 5);
  CHECK(r.blocks() == std::vector<std::vector<Index>>{{1, 2, 5}, {3, 4}});
  CHECK(r.is_valid());
  CHECK(restrict_prefix(blocks({{1, 3}, {2, 4}}), 1).blocks().size() == 1);
  CHECK(code_of([&] { restrict_prefix(p, 9); }) == ErrorCode::OutOfRange);
}

TEST_CASE("restrict_prefix invariants hold for every partition of small sets") {
  for (std::size_t m : {4, 6, 8}) {
    for (std::size_t n : {1, 2, 4}) {
      if (m % n) continue;
      for_each_ordered_partition(m, n, [&](const OrderedPartition& p) {
        for (std::size_t pre = 1; pre <= m; ++pre) CHECK(restrict_prefix(p, pre).is_valid());
      });
    }
  }
}

TEST_CASE("subpartition validity") {
  CHECK_FALSE(OrderedSubpartition(4, {{1}, {2, 3}}).is_valid());
  CHECK_FALSE(OrderedSubpartition(4, {{2, 3}, {1, 4}}).is_valid());
  CHECK(OrderedSubpartition(4, {{1, 3}, {2}}).is_valid());
}

TEST_CASE("runs") {
  const std::vector<Index> a{1, 3, 4, 7}, b{1, 2, 5, 6};
  CHECK(runs_of(a) == std::vector<Run>{{1, 1}, {3, 4}, {7, 7}});
  CHECK(runs_of(std::vector<Index>{}).empty());
  CHECK(runs_of(b) == std::vector<Run>{{1, 2}, {5, 6}});
}

TEST_CASE("interleaved runs") {
  auto g = interleaved_runs(blocks({{1, 3}, {2, 4}}));
  REQUIRE(g.rows.size() == 2);
  CHECK(g.rows[0] == std::vector<std::optional<Run>>{Run{1, 1}, Run{2, 2}});
  CHECK(g.rows[1] == std::vector<std::optional<Run>>{Run{3, 3}, Run{4, 4}});
  g = interleaved_runs(blocks({{1, 2}, {3, 4}}));
  REQUIRE(g.rows.size() == 1);
  CHECK(g.rows[0] == std::vector<std::optional<Run>>{Run{1, 2}, Run{3, 4}});
  g = interleaved_runs(blocks({{1, 2, 5, 6}, {3, 4, 7, 8}}));
  REQUIRE(g.rows.size() == 2);
  CHECK(g.rows[1] == std::vector<std::optional<Run>>{Run{5, 6}, Run{7, 8}});
}

TEST_CASE("interleaved runs cover every element in natural order") {
  std::mt19937_64 rng(11);
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 1 + rng() % 4, m = n * (1 + rng() % 6);
    const auto p = random_ordered_partition(m, n, rng);
    const auto g = interleaved_runs(p);
    Index next = 1;
    for (const auto& row : g.rows) {
      REQUIRE(row.size() == n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!row[i]) continue;
        CHECK(row[i]->lo == next);
        for (Index x = row[i]->lo; x <= row[i]->hi; ++x) CHECK(p.block_of(x) == i + 1);
        next = row[i]->hi + 1;
      }
    }
    CHECK(next == m + 1);
  }
}

TEST_CASE("psize oracle") {
  // n = 1: one run, nothing to compare.
  CHECK(psize_oracle({Run{1, 2}}, {Run{1, 2}, Run{3, 4}}, blocks({{1, 3}, {2, 4}})));
  // R = ({1}, {2,3}) under the nest doubling of {1,2,3}: S = {1,2}, {3,4}, {5,6}.
  const auto doubling = blocks({{1, 2}, {3, 4}, {5, 6}});
  CHECK(psize_oracle({Run{1, 1}, Run{2, 3}}, {Run{1, 2}, Run{3, 4}, Run{5, 6}}, doubling));
  // Decreasing run sizes violate the conclusion but also the hypothesis here.
  CHECK(code_of([&] { psize_oracle({Run{1, 2}, Run{3, 3}}, {Run{1, 2}, Run{3, 4}, Run{5, 6}}, doubling); }) ==
        ErrorCode::HypothesisViolated);
  CHECK(code_of([&] { psize_oracle({Run{1, 1}}, {Run{1, 1}}, doubling); }) == ErrorCode::HypothesisViolated);
}

TEST_CASE("compose") {
  const auto id = OrderedPartition::identity(4);
  const auto std24 = blocks({{1, 3}, {2, 4}});
  CHECK(compose(id, std24) == std24);
  const auto std48 = blocks({{1, 5}, {2, 6}, {3, 7}, {4, 8}});
  CHECK(compose(std48, std24) == blocks({{1, 3, 5, 7}, {2, 4, 6, 8}}));
  const auto nest48 = blocks({{1, 2}, {3, 4}, {5, 6}, {7, 8}});
  CHECK(compose(nest48, blocks({{1, 2}, {3, 4}})) == blocks({{1, 2, 3, 4}, {5, 6, 7, 8}}));
  CHECK(code_of([&] { compose(std24, std24); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("enumeration matches brute force") {
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t n = 1; n <= m; ++n) {
      if (m % n) continue;
      std::set<std::vector<Index>> seen;
      for_each_ordered_partition(m, n, [&](const OrderedPartition& p) { seen.insert(p.assignment()); });
      const auto expect = oracle::brute_force_partitions(m, n);
      CHECK(seen.size() == expect.size());
      for (const auto& b : expect) {
        std::vector<std::vector<Index>> bb(b.begin(), b.end());
        CHECK(seen.count(OrderedPartition::from_blocks(bb).assignment()) == 1);
      }
    }
  }
}

TEST_CASE("random partitions are valid and cover the space") {
  std::mt19937_64 rng(5);
  std::set<std::vector<Index>> seen;
  for (int i = 0; i < 2000; ++i) seen.insert(random_ordered_partition(6, 2, rng).assignment());
  CHECK(seen.size() == 5);  // Catalan(3)
}
