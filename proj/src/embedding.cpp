#include "tuhf/embedding.hpp"

#include "tuhf/kernels.hpp"

namespace tuhf {

RegularEmbedding::RegularEmbedding(OrderedPartition diag) : diag_(std::move(diag)) {}

const char* to_string(EmbeddingOrder o) {
  switch (o) {
    case EmbeddingOrder::Less: return "Less";
    case EmbeddingOrder::EqualOnProjections: return "EqualOnProjections";
    case EmbeddingOrder::Greater: return "Greater";
  }
  return "?";
}

namespace {

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be positive");
}

}  // namespace

RegularEmbedding standard(std::size_t k, std::size_t mult) { return alternating(k, mult, 1); }

RegularEmbedding nest(std::size_t k, std::size_t mult) { return alternating(k, 1, mult); }

RegularEmbedding alternating(std::size_t k, std::size_t s_mult, std::size_t t_mult) {
  require_positive(k, "k");
  require_positive(s_mult, "s multiplicity");
  require_positive(t_mult, "t multiplicity");
  to_size(BigInt(k) * s_mult * t_mult);
  return RegularEmbedding(OrderedPartition::from_assignment(
      kernels::parallel::alternating_assignment(k, s_mult, t_mult), k));
}

RegularEmbedding identity_embedding(std::size_t k) {
  return RegularEmbedding(OrderedPartition::identity(k));
}

std::vector<std::pair<Index, Index>> image_of_unit(const RegularEmbedding& e, std::size_t i,
                                                   std::size_t j) {
  if (i < 1 || j < 1 || i > e.k_from() || j > e.k_from()) {
    throw Error(ErrorCode::IndexOutOfRange, "unit (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") outside 1.." +
                                                std::to_string(e.k_from()));
  }
  if (i > j) {
    throw Error(ErrorCode::LowerTriangularRequest,
                "unit (" + std::to_string(i) + ", " + std::to_string(j) + ") is below the diagonal");
  }
  auto bi = e.diag().block(i);
  auto bj = e.diag().block(j);
  std::vector<std::pair<Index, Index>> out;
  out.reserve(bi.size());
  for (std::size_t m = 0; m < bi.size(); ++m) out.emplace_back(bi[m], bj[m]);
  return out;
}

RegularEmbedding compose_embeddings(const RegularEmbedding& outer, const RegularEmbedding& inner) {
  if (inner.k_to() != outer.k_from()) {
    throw Error(ErrorCode::ShapeMismatch, "inner lands in T_" + std::to_string(inner.k_to()) +
                                              " but outer starts at T_" +
                                              std::to_string(outer.k_from()));
  }
  return RegularEmbedding(compose(outer.diag(), inner.diag()));
}

EmbeddingOrder compare_embeddings(const RegularEmbedding& a, const RegularEmbedding& b) {
  if (a.k_from() != b.k_from() || a.k_to() != b.k_to()) {
    throw Error(ErrorCode::ShapeMismatch, "embeddings between different levels");
  }
  switch (compare(a.diag(), b.diag())) {
    case Ordering::Less: return EmbeddingOrder::Less;
    case Ordering::Equal: return EmbeddingOrder::EqualOnProjections;
    case Ordering::Greater: return EmbeddingOrder::Greater;
  }
  return EmbeddingOrder::EqualOnProjections;
}

RegularEmbedding regularize(const std::vector<std::vector<Index>>& raw) {
  try {
    return RegularEmbedding(OrderedPartition::from_blocks(raw));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPartition, e.what());
  }
}

RegularEmbedding tensor_embed(const RegularEmbedding& phi, const RegularEmbedding& psi) {
  to_size(BigInt(phi.k_to()) * psi.k_to());
  return RegularEmbedding(OrderedPartition::from_assignment(
      kernels::parallel::tensor_assignment(phi.diag().assignment(), psi.diag().assignment(),
                                           psi.k_from()),
      phi.k_from() * psi.k_from()));
}

}  // namespace tuhf
