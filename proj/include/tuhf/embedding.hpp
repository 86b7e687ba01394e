#pragma once

// Regular embeddings T_k -> T_k' determined by the ordered partition of
// the image projections; off-diagonal units go by rank pairing.

#include <utility>
#include <vector>

#include "tuhf/partition.hpp"

namespace tuhf {

class RegularEmbedding {
 public:
  explicit RegularEmbedding(OrderedPartition diag);

  std::size_t k_from() const { return diag_.block_count(); }
  std::size_t k_to() const { return diag_.ground_size(); }
  std::size_t multiplicity() const { return diag_.block_size(); }
  const OrderedPartition& diag() const { return diag_; }

  friend bool operator==(const RegularEmbedding&, const RegularEmbedding&) = default;

 private:
  OrderedPartition diag_;
};

enum class EmbeddingOrder { Less, EqualOnProjections, Greater };

const char* to_string(EmbeddingOrder o);

// A -> I_mult (x) A
RegularEmbedding standard(std::size_t k, std::size_t mult);
// A -> A (x) I_mult
RegularEmbedding nest(std::size_t k, std::size_t mult);
// A -> I_s (x) A (x) I_t
RegularEmbedding alternating(std::size_t k, std::size_t s_mult, std::size_t t_mult);
RegularEmbedding identity_embedding(std::size_t k);

// Pairs (i_m, j_m): the m-th smallest elements of blocks i and j.
std::vector<std::pair<Index, Index>> image_of_unit(const RegularEmbedding& e, std::size_t i,
                                                   std::size_t j);

// outer after inner
RegularEmbedding compose_embeddings(const RegularEmbedding& outer, const RegularEmbedding& inner);

EmbeddingOrder compare_embeddings(const RegularEmbedding& a, const RegularEmbedding& b);

// raw[i-1] is the set of diagonal indices of the image of e_i.
RegularEmbedding regularize(const std::vector<std::vector<Index>>& raw);

// Diagonal unit (i, a), indexed (i-1)*j + a, goes to
// {(i''-1)*j' + b : i'' in phi block i, b in psi block a}.
RegularEmbedding tensor_embed(const RegularEmbedding& phi, const RegularEmbedding& psi);

}  // namespace tuhf
