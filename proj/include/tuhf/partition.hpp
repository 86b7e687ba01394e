#pragma once

// Ordered partitions of {1..m} into equal rank-ordered blocks, ordered
// subpartitions, and runs.

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tuhf/common.hpp"

namespace tuhf {

enum class Ordering { Less, Equal, Greater };

const char* to_string(Ordering o);

// The contiguous interval {lo..hi}.
struct Run {
  Index lo = 1;
  Index hi = 1;

  std::size_t size() const { return static_cast<std::size_t>(hi - lo) + 1; }
  bool contains(Index x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Run&, const Run&) = default;
};

// Equal-size blocks A_1, ..., A_n of {1..m} such that the l-th smallest
// element of A_i is below the l-th smallest element of A_j whenever i < j.
class OrderedPartition {
 public:
  // assign[x-1] is the (1-based) block of element x.
  static OrderedPartition from_assignment(std::vector<Index> assign, std::size_t block_count);
  // blocks[i-1] lists the elements of block i, in any order.
  static OrderedPartition from_blocks(const std::vector<std::vector<Index>>& blocks);
  static OrderedPartition identity(std::size_t m);

  // "m=<int> n=<int> blocks=<a,b;c,d;...>"
  static OrderedPartition parse(std::string_view text);
  std::string to_string() const;

  std::size_t ground_size() const { return assign_.size(); }
  std::size_t block_count() const { return blocks_; }
  std::size_t block_size() const { return blocks_ == 0 ? 0 : assign_.size() / blocks_; }

  Index block_of(Index element) const { return assign_[element - 1]; }
  const std::vector<Index>& assignment() const { return assign_; }

  // Sorted elements of block i (1-based).
  std::span<const Index> block(std::size_t i) const;
  // The rank-th smallest (1-based) element of block i.
  Index element_at(std::size_t i, std::size_t rank) const;
  // 1-based rank of element x inside its block.
  std::size_t rank_of(Index element) const;

  friend bool operator==(const OrderedPartition& a, const OrderedPartition& b) {
    return a.blocks_ == b.blocks_ && a.assign_ == b.assign_;
  }

 private:
  OrderedPartition(std::vector<Index> assign, std::size_t block_count);

  std::size_t blocks_ = 0;
  std::vector<Index> assign_;
  std::vector<Index> elements_;  // block-major, each block ascending
};

// Disjoint sorted blocks with weakly decreasing sizes and the rank order
// condition up to the smaller block's size. Trailing empty blocks are
// dropped on construction.
class OrderedSubpartition {
 public:
  OrderedSubpartition(std::size_t ground_size, std::vector<std::vector<Index>> blocks);

  std::size_t ground_size() const { return ground_; }
  const std::vector<std::vector<Index>>& blocks() const { return blocks_; }

  // Checks disjointness, size monotonicity and the rank condition.
  bool is_valid() const;

  friend bool operator==(const OrderedSubpartition&, const OrderedSubpartition&) = default;

 private:
  std::size_t ground_;
  std::vector<std::vector<Index>> blocks_;
};

Ordering compare(const OrderedPartition& a, const OrderedPartition& b);

OrderedSubpartition restrict_prefix(const OrderedPartition& p, std::size_t prefix);

std::vector<Run> runs_of(std::span<const Index> sorted);

// Runs of all blocks laid out as a grid: cell (j, i) holds the j-th run
// of block i, with the flattened order Q_{1,1} < Q_{1,2} < ... matching
// the natural order of the runs.
struct RunGrid {
  std::size_t columns = 0;
  std::vector<std::vector<std::optional<Run>>> rows;

  friend bool operator==(const RunGrid&, const RunGrid&) = default;
};

RunGrid interleaved_runs(const OrderedPartition& p);

// Executable run-size check: given runs R_1 < ... < R_n in
// {1..r}, runs S_1 < ... < S_{n+1} in {1..s} with |S_1| = ... = |S_n| >= 1,
// and a unital embedding (ordered partition of {1..s} into r blocks) taking
// the union of R onto the union of S with image(R_i) containing S_i, reports
// whether |R_1| <= ... <= |R_n|. S_{n+1} may be empty.
bool psize_oracle(const std::vector<Run>& r_runs, const std::vector<std::optional<Run>>& s_runs,
                  const OrderedPartition& embedding);

// Block i of the result is the union of outer blocks indexed by inner block i.
OrderedPartition compose(const OrderedPartition& outer, const OrderedPartition& inner);

// Visits every ordered partition of {1..m} into n blocks.
void for_each_ordered_partition(std::size_t m, std::size_t n,
                                const std::function<void(const OrderedPartition&)>& visit);

OrderedPartition random_ordered_partition(std::size_t m, std::size_t n, std::mt19937_64& rng);

}  // namespace tuhf
