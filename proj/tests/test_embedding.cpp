#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tuhf/embedding.hpp"
#include "tuhf/matrix.hpp"

using namespace tuhf;

namespace {

OrderedPartition blocks(std::vector<std::vector<Index>> b) { return OrderedPartition::from_blocks(b); }

std::vector<std::vector<Index>> as_blocks(const oracle::Blocks& b) { return {b.begin(), b.end()}; }

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

TEST_CASE("named embeddings") {
  CHECK(standard(2, 2).diag() == blocks({{1, 3}, {2, 4}}));
  CHECK(standard(3, 2).diag() == blocks({{1, 4}, {2, 5}, {3, 6}}));
  CHECK(standard(5, 1) == identity_embedding(5));
  CHECK(nest(2, 2).diag() == blocks({{1, 2}, {3, 4}}));
  CHECK(nest(2, 3).diag() == blocks({{1, 2, 3}, {4, 5, 6}}));
  CHECK(nest(4, 1) == identity_embedding(4));
  CHECK(alternating(2, 2, 2).diag() == blocks({{1, 2, 5, 6}, {3, 4, 7, 8}}));
  CHECK(alternating(3, 1, 1) == identity_embedding(3));
}

TEST_CASE("alternating matches the Kronecker support and the index formula") {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t s = 1; s <= 4; ++s)
      for (std::size_t t = 1; t <= 4; ++t) {
        const auto e = alternating(k, s, t);
        CHECK(e.diag() == OrderedPartition::from_blocks(as_blocks(oracle::alternating_blocks_by_kron(k, s, t))));
        CHECK(e.diag() == OrderedPartition::from_blocks(as_blocks(oracle::alternating_blocks_by_formula(k, s, t))));
        CHECK(alternating(k, s, 1) == standard(k, s));
        CHECK(alternating(k, 1, t) == nest(k, t));
      }
}

TEST_CASE("image of unit") {
  using P = std::vector<std::pair<Index, Index>>;
  CHECK(image_of_unit(standard(2, 2), 1, 2) == P{{1, 2}, {3, 4}});
  CHECK(image_of_unit(nest(2, 2), 1, 2) == P{{1, 3}, {2, 4}});
  CHECK(image_of_unit(alternating(2, 2, 2), 2, 2) == P{{3, 3}, {4, 4}, {7, 7}, {8, 8}});
  CHECK(code_of([] { image_of_unit(standard(2, 2), 2, 1); }) == ErrorCode::LowerTriangularRequest);
  CHECK(code_of([] { image_of_unit(standard(2, 2), 1, 3); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("images of units are upper triangular for random embeddings") {
  std::mt19937_64 rng(1);
  for (int c = 0; c < 100; ++c) {
    const std::size_t k = 1 + rng() % 5, m = k * (1 + rng() % 5);
    const RegularEmbedding e(random_ordered_partition(m, k, rng));
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = i; j <= k; ++j)
        for (auto [r, col] : image_of_unit(e, i, j)) CHECK(r <= col);
  }
}

TEST_CASE("composition") {
  CHECK(compose_embeddings(alternating(8, 2, 2), alternating(2, 2, 2)) == alternating(2, 4, 4));
  CHECK(compose_embeddings(identity_embedding(4), standard(2, 2)) == standard(2, 2));
  CHECK(compose_embeddings(nest(4, 2), standard(2, 2)) == alternating(2, 2, 2));
  CHECK(code_of([] { compose_embeddings(standard(3, 2), standard(2, 2)); }) == ErrorCode::ShapeMismatch);
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t s1 = 1; s1 <= 3; ++s1)
      for (std::size_t t1 = 1; t1 <= 3; ++t1)
        for (std::size_t s2 = 1; s2 <= 2; ++s2)
          for (std::size_t t2 = 1; t2 <= 2; ++t2)
            CHECK(compose_embeddings(alternating(k * s1 * t1, s2, t2), alternating(k, s1, t1)) ==
                  alternating(k, s1 * s2, t1 * t2));
}

namespace {

std::set<std::pair<Index, Index>> chained_image(const RegularEmbedding& f, const RegularEmbedding& g, std::size_t i,
                                                std::size_t j) {
  std::set<std::pair<Index, Index>> out;
  for (auto [a, b] : image_of_unit(g, i, j))
    for (auto pr : image_of_unit(f, a, b)) out.insert(pr);
  return out;
}

}  // namespace

TEST_CASE("composition is functorial on matrix units of alternating embeddings") {
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t s1 = 1; s1 <= 3; ++s1)
      for (std::size_t t1 = 1; t1 <= 3; ++t1)
        for (std::size_t s2 = 1; s2 <= 2; ++s2)
          for (std::size_t t2 = 1; t2 <= 2; ++t2) {
            const auto g = alternating(k, s1, t1), f = alternating(k * s1 * t1, s2, t2);
            const auto fg = compose_embeddings(f, g);
            for (std::size_t i = 1; i <= k; ++i)
              for (std::size_t j = i; j <= k; ++j) {
                const auto direct = image_of_unit(fg, i, j);
                CHECK(std::set<std::pair<Index, Index>>(direct.begin(), direct.end()) == chained_image(f, g, i, j));
              }
          }
}

TEST_CASE("composition keeps the rows and columns of chained unit images") {
  // Rank pairing of the composite may pair them differently.
  std::mt19937_64 rng(2);
  for (int c = 0; c < 100; ++c) {
    const std::size_t k = 1 + rng() % 4, m = k * (1 + rng() % 3), m2 = m * (1 + rng() % 3);
    const RegularEmbedding g(random_ordered_partition(m, k, rng)), f(random_ordered_partition(m2, m, rng));
    const auto fg = compose_embeddings(f, g);
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = i; j <= k; ++j) {
        std::set<Index> rows, cols, chained_rows, chained_cols;
        for (auto [a, b] : image_of_unit(fg, i, j)) rows.insert(a), cols.insert(b);
        for (auto [a, b] : chained_image(f, g, i, j)) chained_rows.insert(a), chained_cols.insert(b);
        CHECK(rows == chained_rows);
        CHECK(cols == chained_cols);
      }
  }
}

TEST_CASE("compare embeddings") {
  CHECK(compare_embeddings(nest(2, 2), standard(2, 2)) == EmbeddingOrder::Less);
  CHECK(compare_embeddings(standard(2, 2), nest(2, 2)) == EmbeddingOrder::Greater);
  CHECK(compare_embeddings(standard(2, 2), standard(2, 2)) == EmbeddingOrder::EqualOnProjections);
}

TEST_CASE("order is preserved by composition") {
  std::mt19937_64 rng(4);
  for (int c = 0; c < 300; ++c) {
    const std::size_t n = 1 + rng() % 3, m = n * (1 + rng() % 4), m2 = m * (1 + rng() % 3);
    const RegularEmbedding a(random_ordered_partition(m, n, rng)), b(random_ordered_partition(m, n, rng));
    const RegularEmbedding f(random_ordered_partition(m2, m, rng));
    if (compare_embeddings(a, b) == EmbeddingOrder::Less) {
      CHECK(compare_embeddings(compose_embeddings(f, a), compose_embeddings(f, b)) == EmbeddingOrder::Less);
    }
  }
}

TEST_CASE("regularize") {
  CHECK(regularize({{1, 3}, {2, 4}}) == standard(2, 2));
  CHECK(code_of([] { regularize({{1, 4}, {2, 3}}); }) == ErrorCode::InvalidPartition);
  CHECK(regularize({{1, 2, 5, 6}, {3, 4, 7, 8}}) == alternating(2, 2, 2));
}

TEST_CASE("tensor embedding") {
  CHECK(tensor_embed(standard(2, 2), nest(2, 2)) == alternating(4, 2, 2));
  CHECK(tensor_embed(identity_embedding(2), identity_embedding(3)) == identity_embedding(6));
  const auto ss = tensor_embed(standard(2, 2), standard(2, 2));
  const auto blk = ss.diag().block(1);
  CHECK(std::vector<Index>(blk.begin(), blk.end()) == std::vector<Index>{1, 3, 9, 11});
  std::mt19937_64 rng(8);
  for (int c = 0; c < 50; ++c) {
    const std::size_t k = 1 + rng() % 3, k2 = k * (1 + rng() % 3), j = 1 + rng() % 3, j2 = j * (1 + rng() % 3);
    const RegularEmbedding phi(random_ordered_partition(k2, k, rng)), psi(random_ordered_partition(j2, j, rng));
    oracle::Blocks pb, qb;
    for (std::size_t i = 1; i <= k; ++i) pb.emplace_back(phi.diag().block(i).begin(), phi.diag().block(i).end());
    for (std::size_t i = 1; i <= j; ++i) qb.emplace_back(psi.diag().block(i).begin(), psi.diag().block(i).end());
    CHECK(tensor_embed(phi, psi).diag() == OrderedPartition::from_blocks(as_blocks(oracle::tensor_blocks(pb, qb, j2))));
  }
}

TEST_CASE("tensor of standard and nest chains is the alternating chain") {
  // Level n: standard 2^n x nest 2^n inside T_{4^n}.
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t k = std::size_t{1} << n;
    CHECK(tensor_embed(standard(k, 2), nest(k, 2)) == alternating(k * k, 2, 2));
  }
}
