#pragma once

// Finite-depth points of the Gelfand space X = prod [k_n / k_{n-1}] and the
// order on tail-equivalent points, computed two ways: lexicographically on
// coordinates, and through the chain of diagonal projections.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tuhf/tower.hpp"

namespace tuhf {

// Coordinates x_1..x_N, 0-based, with x_n < k_n / k_{n-1} (k_0 = 1). Points
// are tail-equivalent when their tail labels agree; coordinates beyond N are
// then assumed equal.
struct GelfandPoint {
  std::vector<std::uint64_t> coords;
  std::string tail = "shared";

  // "x1,x2,...[@tail]"
  static GelfandPoint parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const GelfandPoint&, const GelfandPoint&) = default;
};

enum class GelfandVerdict { Less, Equal, Greater, Incomparable };
const char* to_string(GelfandVerdict v);

// Throws OutOfRange if a coordinate exceeds its level ratio.
void validate_point(const TowerSpec& tower, const GelfandPoint& x);

// i_1..i_N: i_1 = x_1 + 1 and i_n is the (x_n + 1)-th smallest element of
// the image block of i_{n-1} under phi_{n-1}.
std::vector<Index> projection_chain(const TowerSpec& tower, const GelfandPoint& x);

// Lexicographic comparison of the coordinates (the first differing
// coordinate decides).
GelfandVerdict gelfand_compare(const TowerSpec& tower, const GelfandPoint& x, const GelfandPoint& y);

// Comparison through projection chains: x <= y when some depth n has
// i_n <= j_n and, at every deeper level, i_{n'} is the partner of j_{n'}
// under the rank-paired image of e_{i_n, j_n}.
GelfandVerdict gelfand_compare_via_projections(const TowerSpec& tower, const GelfandPoint& x,
                                               const GelfandPoint& y);

struct RelationPair {
  GelfandPoint x;
  GelfandPoint y;
  std::size_t n = 0;
  Index i = 0;
  Index j = 0;
};

// Minimal-depth witness of x <= y, or empty.
std::optional<RelationPair> relation_member(const TowerSpec& tower, const GelfandPoint& x,
                                            const GelfandPoint& y, std::size_t depth);

}  // namespace tuhf
