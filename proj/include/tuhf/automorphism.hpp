#pragma once

// Projection actions of automorphisms on alternating towers: shift words,
// their finite-level materialization, interval-form detection and the
// factorization theta = theta_u o theta_v^-1 o (diagonal part).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tuhf/tower.hpp"

namespace tuhf {

// Reduced fraction u/v naming the outer class theta_u o theta_v^-1.
class ShiftWord {
 public:
  ShiftWord() = default;
  // Throws InvalidShiftWord unless u, v > 0 and gcd(u, v) = 1.
  ShiftWord(BigInt u, BigInt v);
  // Reduces u/v to lowest terms.
  static ShiftWord reduced(const BigInt& u, const BigInt& v);
  static ShiftWord parse(std::string_view text);

  const BigInt& u() const { return u_; }
  const BigInt& v() const { return v_; }
  bool is_identity() const { return u_ == 1 && v_ == 1; }

  ShiftWord inverse() const { return ShiftWord(v_, u_); }
  ShiftWord power(std::size_t m) const;
  std::string to_string() const;

  friend ShiftWord operator*(const ShiftWord& a, const ShiftWord& b);
  friend bool operator==(const ShiftWord&, const ShiftWord&) = default;

 private:
  BigInt u_ = 1;
  BigInt v_ = 1;
};

// Primes usable in shift words: infinite in both s_phi and t_phi.
std::set<std::uint64_t> common_infinite_primes(const TowerSpec& tower);

// Throws InvalidShiftWord if a prime of u or v is not common-infinite.
void validate_word(const TowerSpec& tower, const ShiftWord& w);

// Images of the level-m diagonal units inside T_{k_m'}.
struct FiniteAutoData {
  std::size_t level_from = 1;
  std::size_t level_to = 1;
  OrderedPartition action;
  friend bool operator==(const FiniteAutoData&, const FiniteAutoData&) = default;
};

// Auto-data text: "levels <m> <m'>" then "action <partition>", repeated.
std::vector<FiniteAutoData> parse_auto_data(std::string_view text);
std::vector<FiniteAutoData> load_auto_data_file(const std::string& path);
std::string format_auto_data(const std::vector<FiniteAutoData>& data);

// theta_2 after theta_1; theta_2 must start where theta_1 ends.
FiniteAutoData compose_actions(const FiniteAutoData& second, const FiniteAutoData& first);

// The tower's own embedding, seen as the identity automorphism.
FiniteAutoData identity_action(const TowerSpec& tower, std::size_t m, std::size_t m_to);

// theta_p on levels n -> n+1: A -> I_{p s_{n+1}/s_n} (x) A (x) I_{t_{n+1}/(p t_n)}.
FiniteAutoData shift_auto(const TowerSpec& tower, std::uint64_t p, std::size_t n);
std::vector<FiniteAutoData> shift_auto_levels(const TowerSpec& tower, std::uint64_t p,
                                              std::size_t from, std::size_t to);

// Groups levels so every common-infinite prime divides each s and t ratio:
// one step per pass of the cycle, the preamble folded into the first step.
// Level n >= 2 of the result is level |preamble| + |cycle|*(n-1) + 1.
TowerSpec normalize_for_primes(const TowerSpec& tower);

// I_{u S / v} (x) A (x) I_{T v / u} from level m to m', with S, T the split
// ratios between the levels. Throws NotMaterializable unless v | S and u | T.
FiniteAutoData materialize_word(const TowerSpec& tower, const ShiftWord& w, std::size_t m,
                                std::size_t m_to);
// Smallest m' > m at which w materializes from level m.
std::size_t minimal_target_level(const TowerSpec& tower, const ShiftWord& w, std::size_t m);

struct IntervalForm {
  BigInt s;
  BigInt t;
  friend bool operator==(const IntervalForm&, const IntervalForm&) = default;
};

// (s, t) when q is the diagonal pattern of I_s (x) . (x) I_t on k_m blocks.
std::optional<IntervalForm> detect_interval_form(const OrderedPartition& q, std::size_t k_m);

struct FactorEntry {
  std::size_t m = 0;
  std::size_t m_to = 0;
  IntervalForm form;
  ShiftWord word;
};

struct FactorReport {
  std::vector<FactorEntry> entries;
  ShiftWord word;
  std::string to_string() const;
};

// Reads u/v = s / (s_{m'}/s_m) from every datum. Data must agree, and
// data whose level ranges are nested are checked for compatibility with
// the tower embeddings.
FactorReport factor_automorphism(const TowerSpec& tower, const std::vector<FiniteAutoData>& data);

std::size_t out_rank(const TowerSpec& tower);

std::optional<Rational> alternating_iso(const TowerSpec& a, const TowerSpec& b);

// w^m is the identity word, cross-checked at finite level by chaining m
// materializations of w and comparing with the tower composite.
bool torsion_check(const TowerSpec& tower, const ShiftWord& w, std::size_t m);

// Action on the tensor tower from level n to N: unit (i, b) goes to
// gamma(i) x theta_i(b), gamma the global word on the phi factor and
// theta_i the psi word attached to phi unit i.
FiniteAutoData combine_tensor_autos(const TensorTower& tower, std::size_t n, std::size_t n_to,
                                    const std::vector<ShiftWord>& block_words,
                                    const ShiftWord& global_word);

// dim T_k + dim T_k^* - dim(diagonal) == k^2, counted entry by entry.
bool dirichlet_dimension_check(std::size_t k);

}  // namespace tuhf
