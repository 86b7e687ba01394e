#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tuhf/automorphism.hpp"
#include "tuhf/properties.hpp"

using namespace tuhf;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

OrderedPartition blocks(std::vector<std::vector<Index>> b) { return OrderedPartition::from_blocks(b); }

const TowerSpec& two_inf() {
  static const TowerSpec t = load_tower("k1 4\ncycle alt 2 2");
  return t;
}

}  // namespace

TEST_CASE("shift words") {
  CHECK(ShiftWord::parse("2/1") == ShiftWord(2, 1));
  CHECK(ShiftWord::parse("3") == ShiftWord(3, 1));
  CHECK(ShiftWord::reduced(6, 4).to_string() == "3/2");
  CHECK(code_of([] { ShiftWord(4, 2); }) == ErrorCode::InvalidShiftWord);
  CHECK(code_of([] { ShiftWord(0, 1); }) == ErrorCode::InvalidShiftWord);
  CHECK(code_of([] { ShiftWord::parse("a/2"); }) == ErrorCode::MalformedToken);
  CHECK(ShiftWord(2, 3) * ShiftWord(3, 2) == ShiftWord{});
  CHECK(ShiftWord(2, 3).power(3) == ShiftWord(8, 27));
  CHECK(ShiftWord(2, 3).inverse() == ShiftWord(3, 2));
  CHECK(code_of([] { validate_word(two_inf(), ShiftWord(3, 1)); }) == ErrorCode::InvalidShiftWord);
  validate_word(two_inf(), ShiftWord(4, 1));
}

TEST_CASE("shift_auto on the 2^inf tower") {
  const auto d = shift_auto(two_inf(), 2, 1);
  CHECK(d.level_from == 1);
  CHECK(d.level_to == 2);
  CHECK(d.action == blocks({{1, 5, 9, 13}, {2, 6, 10, 14}, {3, 7, 11, 15}, {4, 8, 12, 16}}));
  CHECK(code_of([] { shift_auto(two_inf(), 3, 1); }) == ErrorCode::PrimeNotCommonInfinite);
  // I_{p s'/s} (x) A (x) I_{t'/(p t)} keeps the size k_{n+1}.
  CHECK(d.action.ground_size() == two_inf().dim(2));
}

TEST_CASE("shift_auto requires normalized levels") {
  const auto t = load_tower("k1 2\ncycle alt 2 1\ncycle alt 1 2");
  CHECK(code_of([&] { shift_auto(t, 2, 1); }) == ErrorCode::TowerNotNormalizedForPrime);
  const auto normal = normalize_for_primes(t);
  CHECK(normal.dim(2) == t.dim(3));
  CHECK(normal.initial_split() == t.initial_split());
  const auto d = shift_auto(normal, 2, 1);
  CHECK(d.action == alternating(2, 4, 1).diag());
}

TEST_CASE("normalization folds the preamble into the first step") {
  const auto t = load_tower("k1 3\npreamble alt 3 1\ncycle alt 2 1\ncycle alt 1 2\n");
  const auto normal = normalize_for_primes(t);
  for (std::size_t n = 2; n <= 5; ++n) CHECK(normal.dim(n) == t.dim(1 + 2 * (n - 1) + 1));
  CHECK(supernatural_pair(normal) == supernatural_pair(t));
}

TEST_CASE("shift well-definedness on random towers") {
  std::mt19937_64 rng(41);
  RandomTowerOptions opt;
  opt.max_ratio = 12;
  for (int c = 0; c < 20; ++c) {
    const auto t = normalize_for_primes(random_alternating_tower(rng, opt));
    for (std::uint64_t p : common_infinite_primes(t)) {
      for (std::size_t n = 1; n <= 3 && t.dim(n + 2) <= 300000; ++n) {
        const auto lhs = compose(t.embedding(n + 1).diag(), shift_auto(t, p, n).action);
        const auto rhs = compose(shift_auto(t, p, n + 1).action, t.embedding(n).diag());
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("shifts commute") {
  const auto t = load_tower("k1 2\ncycle alt 6 6");
  const auto a = compose_actions(shift_auto(t, 3, 2), shift_auto(t, 2, 1));
  const auto b = compose_actions(shift_auto(t, 2, 2), shift_auto(t, 3, 1));
  CHECK(a == b);
  CHECK(a.action == materialize_word(t, ShiftWord(6, 1), 1, 3).action);
}

TEST_CASE("materialization") {
  const auto& t = two_inf();
  // theta_2^-1 over one level: s = 1, t = 4.
  CHECK(materialize_word(t, ShiftWord(1, 2), 1, 2).action == alternating(4, 1, 4).diag());
  CHECK(materialize_word(t, ShiftWord{}, 1, 3).action == t.composite(1, 3).diag());
  CHECK(code_of([&] { materialize_word(t, ShiftWord(4, 1), 1, 2); }) == ErrorCode::NotMaterializable);
  CHECK(minimal_target_level(t, ShiftWord(4, 1), 1) == 3);
  CHECK(minimal_target_level(t, ShiftWord(1, 8), 2) == 5);
  CHECK(code_of([&] { minimal_target_level(t, ShiftWord(3, 1), 1); }) == ErrorCode::InvalidShiftWord);
}

TEST_CASE("materialized words compose like words") {
  const auto t = load_tower("k1 2\ncycle alt 6 6");
  const ShiftWord a(2, 3), b(3, 1);
  const auto ab = compose_actions(materialize_word(t, a, 2, 3), materialize_word(t, b, 1, 2));
  CHECK(ab.action == materialize_word(t, a * b, 1, 3).action);
}

TEST_CASE("interval form detection") {
  auto f = detect_interval_form(blocks({{1, 2, 5, 6}, {3, 4, 7, 8}}), 2);
  REQUIRE(f);
  CHECK(*f == IntervalForm{2, 2});
  f = detect_interval_form(blocks({{1, 3}, {2, 4}}), 2);
  REQUIRE(f);
  CHECK(*f == IntervalForm{2, 1});
  CHECK_FALSE(detect_interval_form(blocks({{1, 2, 3, 5}, {4, 6, 7, 8}}), 2));
  CHECK_FALSE(detect_interval_form(blocks({{1, 3}, {2, 4}}), 3));
  for (std::size_t k = 2; k <= 4; ++k)
    for (std::size_t s = 1; s <= 4; ++s)
      for (std::size_t t = 1; t <= 4; ++t) {
        const auto q = OrderedPartition::from_blocks(
            [&] {
              auto b = oracle::alternating_blocks_by_formula(k, s, t);
              return std::vector<std::vector<Index>>(b.begin(), b.end());
            }());
        const auto g = detect_interval_form(q, k);
        REQUIRE(g);
        CHECK(*g == IntervalForm{s, t});
      }
}

TEST_CASE("factorization") {
  const auto& t = two_inf();
  auto r = factor_automorphism(t, shift_auto_levels(t, 2, 1, 2));
  CHECK(r.word == ShiftWord(2, 1));
  CHECK(r.entries.size() == 2);
  CHECK(r.entries[0].form == IntervalForm{4, 1});
  CHECK(r.to_string().find("word 2/1\n") != std::string::npos);

  r = factor_automorphism(t, {identity_action(t, 1, 2), identity_action(t, 2, 4)});
  CHECK(r.word.is_identity());

  r = factor_automorphism(t, {materialize_word(t, ShiftWord(1, 2), 1, 2), materialize_word(t, ShiftWord(1, 2), 1, 3)});
  CHECK(r.word == ShiftWord(1, 2));
}

TEST_CASE("factorization errors") {
  const auto& t = two_inf();
  const auto bad = FiniteAutoData{1, 2, OrderedPartition::from_blocks({{1, 2, 3, 6}, {4, 5, 7, 8}, {9, 10, 11, 13}, {12, 14, 15, 16}})};
  CHECK(code_of([&] { factor_automorphism(t, {bad}); }) == ErrorCode::NotIntervalForm);
  CHECK(code_of([&] {
          factor_automorphism(t, {materialize_word(t, ShiftWord(2, 1), 1, 2), materialize_word(t, ShiftWord(1, 2), 2, 3)});
        }) == ErrorCode::InconsistentLevels);
  // A 3-shift on a tower whose t side has no 3.
  const auto t6 = load_tower("k1 2\ncycle alt 6 2");
  const FiniteAutoData three{1, 2, alternating(2, 2, 6).diag()};
  CHECK(code_of([&] { factor_automorphism(t6, {three}); }) == ErrorCode::InvalidShiftWord);
  CHECK(code_of([&] { factor_automorphism(t, {}); }) == ErrorCode::InconsistentLevels);
}

TEST_CASE("factor inverts materialize on random towers") {
  std::mt19937_64 rng(43);
  for (int c = 0; c < 60; ++c) {
    const auto t = random_alternating_tower(rng);
    const ShiftWord w = random_word(t, rng, 1, false);
    const std::size_t a = minimal_target_level(t, w, 1), b = std::max(a, minimal_target_level(t, w, 2));
    if (t.dim(b) > 4000000) continue;
    CHECK(factor_automorphism(t, {materialize_word(t, w, 1, a), materialize_word(t, w, 2, b)}).word == w);
  }
}

TEST_CASE("out rank and isomorphism") {
  CHECK(out_rank(two_inf()) == 1);
  CHECK(out_rank(load_tower("k1 2\ncycle alt 6 6")) == 2);
  CHECK(out_rank(load_tower("k1 2\ncycle std 2")) == 0);
  CHECK(code_of([] { out_rank(load_tower("k1 2\npreamble part 4 m=4 n=2 blocks=1,3;2,4\ncycle std 2")); }) ==
        ErrorCode::NotAlternatingTower);

  const auto a = load_tower("k1 3\npreamble alt 3 1\ncycle alt 2 5");
  const auto b = load_tower("k1 3\npreamble alt 1 3\ncycle alt 2 5");
  auto r = alternating_iso(a, b);
  REQUIRE(r);
  CHECK(r->to_string() == "3/1");
  CHECK(alternating_iso(a, a)->to_string() == "1/1");
  CHECK_FALSE(alternating_iso(load_tower("k1 6\ncycle alt 2 3"), load_tower("k1 6\ncycle alt 3 2")));
  // Isomorphic towers share the outer rank.
  CHECK(out_rank(a) == out_rank(b));
}

TEST_CASE("torsion check") {
  const auto& t = two_inf();
  CHECK_FALSE(torsion_check(t, ShiftWord(2, 1), 3));
  CHECK_FALSE(torsion_check(t, ShiftWord(2, 1), 1));
  for (std::size_t m = 1; m <= 6; ++m) CHECK(torsion_check(t, ShiftWord{}, m));
  CHECK(code_of([&] { torsion_check(t, ShiftWord(3, 1), 1); }) == ErrorCode::InvalidShiftWord);
  std::mt19937_64 rng(47);
  for (int c = 0; c < 30; ++c) {
    const auto tw = random_alternating_tower(rng);
    const ShiftWord w = random_word(tw, rng, 2, true);
    for (std::size_t m = 1; m <= 6; ++m) CHECK_FALSE(torsion_check(tw, w, m));
  }
}

TEST_CASE("tensor automorphisms") {
  const auto phi = load_tower("k1 2\ncycle alt 2 2"), psi = load_tower("k1 2\ncycle alt 2 2");
  const TensorTower tt(phi, psi);
  const std::vector<ShiftWord> ids(2);
  CHECK(combine_tensor_autos(tt, 1, 2, ids, ShiftWord{}).action == tt.composite(1, 2).diag());

  // One block twisted by theta_2: only units (1, b) move.
  const auto twisted = combine_tensor_autos(tt, 1, 2, {ShiftWord(2, 1), ShiftWord{}}, ShiftWord{}).action;
  const auto plain = tt.composite(1, 2).diag();
  const std::size_t j_n = 2;
  for (std::size_t unit = 1; unit <= 4; ++unit) {
    const bool inside = (unit - 1) / j_n == 0;
    const auto a = twisted.block(unit), b = plain.block(unit);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()) != inside);
  }
  // Elements of the clopen set of phi unit 2 keep their blocks.
  for (Index x = 1; x <= twisted.ground_size(); ++x) {
    const std::size_t phi_unit = plain.block_of(x) <= j_n ? 1 : 2;
    if (phi_unit == 2) CHECK(twisted.block_of(x) == plain.block_of(x));
  }
  CHECK(code_of([&] { combine_tensor_autos(tt, 1, 2, {ShiftWord{}}, ShiftWord{}); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { combine_tensor_autos(tt, 1, 2, ids, ShiftWord(3, 1)); }) == ErrorCode::InvalidShiftWord);
}

TEST_CASE("tensor automorphisms commute with the tensor tower") {
  const auto phi = load_tower("k1 2\ncycle alt 2 2"), psi = load_tower("k1 2\ncycle alt 2 2");
  const TensorTower tt(phi, psi);
  const std::vector<ShiftWord> words{ShiftWord(2, 1), ShiftWord(1, 2)};
  const ShiftWord global(2, 1);
  const auto lower = combine_tensor_autos(tt, 1, 2, words, global);
  // Level-2 words are inherited from the level-1 unit containing each unit.
  const auto phi1 = phi.embedding(1).diag();
  std::vector<ShiftWord> inherited;
  for (Index i = 1; i <= phi1.ground_size(); ++i) inherited.push_back(words[phi1.block_of(i) - 1]);
  const auto upper = combine_tensor_autos(tt, 2, 3, inherited, global);
  CHECK(compose(tt.embedding(2).diag(), lower.action) == compose(upper.action, tt.embedding(1).diag()));
}

TEST_CASE("semidirect relation between global and block words") {
  // gamma o (id_X x theta) == (id_{gamma(X)} x theta) o gamma, as level 1 -> 3 actions.
  const auto phi = load_tower("k1 2\ncycle alt 2 2"), psi = load_tower("k1 2\ncycle alt 2 2");
  const TensorTower tt(phi, psi);
  const ShiftWord gamma(2, 1), theta(1, 2);
  const std::vector<ShiftWord> on_x{theta, ShiftWord{}};
  const auto lhs = combine_tensor_autos(tt, 1, 3, on_x, gamma);

  const auto g = materialize_word(phi, gamma, 1, 2).action;
  std::vector<ShiftWord> on_gamma_x;
  for (Index i = 1; i <= g.ground_size(); ++i) on_gamma_x.push_back(g.block_of(i) == 1 ? theta : ShiftWord{});
  const auto first = combine_tensor_autos(tt, 1, 2, std::vector<ShiftWord>(2), gamma);
  const auto second = combine_tensor_autos(tt, 2, 3, on_gamma_x, ShiftWord{});
  CHECK(compose_actions(second, first).action == lhs.action);
}

TEST_CASE("dirichlet dimension identity") {
  for (std::size_t k = 1; k <= 20; ++k) CHECK(dirichlet_dimension_check(k));
}

TEST_CASE("auto data files") {
  const auto data = shift_auto_levels(two_inf(), 2, 1, 2);
  CHECK(parse_auto_data(format_auto_data(data)) == data);
  CHECK(code_of([] { parse_auto_data("action m=2 n=1 blocks=1,2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_auto_data("levels 1 2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_auto_data("levels 1\naction m=2 n=1 blocks=1,2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_auto_data("levels 1 2\naction m=2 n=1 blocks=1,x"); }) == ErrorCode::ParseError);
}
