#pragma once

// Finitely presented towers T_{k_1} -> T_{k_2} -> ...: a finite preamble of
// embedding descriptors followed by a cycle repeated forever.
//
// File grammar (line oriented, '#' starts a comment):
//   k1 <int>
//   split <s1> <t1>          optional, s1 * t1 = k1
//   preamble <descriptor>    zero or more
//   cycle <descriptor>       one or more
// Descriptors: "std <mult>", "nest <mult>", "alt <s_mult> <t_mult>",
// "part <k_to> <partition serialization>".

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tuhf/embedding.hpp"
#include "tuhf/supernatural.hpp"

namespace tuhf {

struct StandardStep {
  std::uint64_t mult = 1;
  friend bool operator==(const StandardStep&, const StandardStep&) = default;
};
struct NestStep {
  std::uint64_t mult = 1;
  friend bool operator==(const NestStep&, const NestStep&) = default;
};
struct AlternatingStep {
  std::uint64_t s_mult = 1;
  std::uint64_t t_mult = 1;
  friend bool operator==(const AlternatingStep&, const AlternatingStep&) = default;
};
struct PartitionStep {
  OrderedPartition diag;
  friend bool operator==(const PartitionStep&, const PartitionStep&) = default;
};

using Descriptor = std::variant<StandardStep, NestStep, AlternatingStep, PartitionStep>;

Descriptor parse_descriptor(std::string_view text);
std::string format_descriptor(const Descriptor& d);

// (s ratio, t ratio) of an alternating-form step; empty for partitions.
std::optional<std::pair<std::uint64_t, std::uint64_t>> split_ratio(const Descriptor& d);

// The embedding the descriptor induces on T_k.
RegularEmbedding realize(const Descriptor& d, std::size_t k);

struct LevelDims {
  BigInt k;
  std::optional<BigInt> s;
  std::optional<BigInt> t;
};

class TowerSpec {
 public:
  TowerSpec(std::uint64_t k1, std::vector<Descriptor> preamble, std::vector<Descriptor> cycle,
            std::optional<std::pair<std::uint64_t, std::uint64_t>> declared_split = std::nullopt);

  std::uint64_t k1() const { return k1_; }
  const std::vector<Descriptor>& preamble() const { return preamble_; }
  const std::vector<Descriptor>& cycle() const { return cycle_; }
  const std::optional<std::pair<std::uint64_t, std::uint64_t>>& declared_split() const {
    return declared_split_;
  }
  // (s_1, t_1), declared or by convention.
  std::pair<std::uint64_t, std::uint64_t> initial_split() const { return initial_split_; }

  // Descriptor of phi_n : T_{k_n} -> T_{k_{n+1}}, n >= 1.
  const Descriptor& descriptor(std::size_t n) const;

  bool is_alternating_form() const;

  BigInt dim(std::size_t n) const;
  LevelDims level_dims(std::size_t n) const;

  // (s_{to}/s_{from}, t_{to}/t_{from}); alternating-form towers only.
  std::pair<BigInt, BigInt> split_ratio(std::size_t from, std::size_t to) const;

  RegularEmbedding embedding(std::size_t n) const;
  // phi_{to-1} o ... o phi_{from}; identity when from == to.
  RegularEmbedding composite(std::size_t from, std::size_t to) const;

  friend bool operator==(const TowerSpec&, const TowerSpec&) = default;

 private:
  std::uint64_t k1_;
  std::vector<Descriptor> preamble_;
  std::vector<Descriptor> cycle_;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> declared_split_;
  std::pair<std::uint64_t, std::uint64_t> initial_split_;
};

TowerSpec load_tower(std::string_view text);
TowerSpec load_tower_file(const std::string& path);
std::string format_tower(const TowerSpec& tower);

// (s_phi, t_phi): finite exponents from the preamble, infinite exponents
// for every prime of the cycle.
std::pair<SupernaturalNumber, SupernaturalNumber> supernatural_pair(const TowerSpec& tower);

void require_alternating(const TowerSpec& tower);

// Tower T_{phi (x) psi} with level n embedding tensor_embed(phi_n, psi_n).
class TensorTower {
 public:
  TensorTower(TowerSpec phi, TowerSpec psi);

  const TowerSpec& phi() const { return phi_; }
  const TowerSpec& psi() const { return psi_; }

  BigInt dim(std::size_t n) const;
  RegularEmbedding embedding(std::size_t n) const;
  RegularEmbedding composite(std::size_t from, std::size_t to) const;

 private:
  TowerSpec phi_;
  TowerSpec psi_;
};

}  // namespace tuhf
