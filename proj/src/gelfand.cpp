#include "tuhf/gelfand.hpp"

#include <sstream>

namespace tuhf {

GelfandPoint GelfandPoint::parse(std::string_view text) {
  GelfandPoint out;
  std::string_view body = text;
  if (auto at = text.find('@'); at != std::string_view::npos) {
    out.tail = std::string(text.substr(at + 1));
    body = text.substr(0, at);
    if (out.tail.empty()) throw Error(ErrorCode::MalformedToken, "empty tail label in '" + std::string(text) + "'");
  }
  std::stringstream ss{std::string(body)};
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if (tok.empty() || tok.front() == '-') throw std::invalid_argument("sign");
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) {
      throw Error(ErrorCode::MalformedToken, "coordinate '" + tok + "' is not a natural number");
    }
    out.coords.push_back(v);
  }
  if (out.coords.empty()) throw Error(ErrorCode::MalformedToken, "point has no coordinates");
  return out;
}

std::string GelfandPoint::to_string() const {
  std::string out;
  for (std::size_t n = 0; n < coords.size(); ++n) {
    if (n > 0) out += ',';
    out += std::to_string(coords[n]);
  }
  return out + "@" + tail;
}

const char* to_string(GelfandVerdict v) {
  switch (v) {
    case GelfandVerdict::Less: return "Less";
    case GelfandVerdict::Equal: return "Equal";
    case GelfandVerdict::Greater: return "Greater";
    case GelfandVerdict::Incomparable: return "Incomparable";
  }
  return "?";
}

void validate_point(const TowerSpec& tower, const GelfandPoint& x) {
  BigInt prev = 1;
  for (std::size_t n = 1; n <= x.coords.size(); ++n) {
    const BigInt k = tower.dim(n);
    const BigInt ratio = k / prev;
    if (BigInt(x.coords[n - 1]) >= ratio) {
      throw Error(ErrorCode::OutOfRange, "coordinate x_" + std::to_string(n) + " = " +
                                             std::to_string(x.coords[n - 1]) + " is not below " +
                                             ratio.str());
    }
    prev = k;
  }
}

std::vector<Index> projection_chain(const TowerSpec& tower, const GelfandPoint& x) {
  validate_point(tower, x);
  std::vector<Index> chain;
  chain.reserve(x.coords.size());
  chain.push_back(static_cast<Index>(x.coords[0] + 1));
  for (std::size_t n = 2; n <= x.coords.size(); ++n) {
    const RegularEmbedding e = tower.embedding(n - 1);
    chain.push_back(e.diag().element_at(chain.back(), x.coords[n - 1] + 1));
  }
  return chain;
}

namespace {

void require_same_depth(const GelfandPoint& x, const GelfandPoint& y) {
  if (x.coords.size() != y.coords.size() || x.coords.empty()) {
    throw Error(ErrorCode::DepthMismatch, "points of depth " + std::to_string(x.coords.size()) + " and " +
                                              std::to_string(y.coords.size()));
  }
}

// Smallest n (1-based) witnessing x <= y, with the chains given.
std::optional<std::size_t> witness_depth(const TowerSpec& tower, const std::vector<Index>& ic,
                                         const std::vector<Index>& jc) {
  const std::size_t depth = ic.size();
  for (std::size_t n = 1; n <= depth; ++n) {
    if (ic[n - 1] > jc[n - 1]) continue;
    bool paired = true;
    for (std::size_t deeper = n + 1; deeper <= depth && paired; ++deeper) {
      const OrderedPartition p = tower.composite(n, deeper).diag();
      paired = p.rank_of(ic[deeper - 1]) == p.rank_of(jc[deeper - 1]);
    }
    if (paired) return n;
  }
  return std::nullopt;
}

}  // namespace

GelfandVerdict gelfand_compare(const TowerSpec& tower, const GelfandPoint& x, const GelfandPoint& y) {
  require_same_depth(x, y);
  validate_point(tower, x);
  validate_point(tower, y);
  if (x.tail != y.tail) return GelfandVerdict::Incomparable;
  for (std::size_t n = 0; n < x.coords.size(); ++n) {
    if (x.coords[n] < y.coords[n]) return GelfandVerdict::Less;
    if (x.coords[n] > y.coords[n]) return GelfandVerdict::Greater;
  }
  return GelfandVerdict::Equal;
}

GelfandVerdict gelfand_compare_via_projections(const TowerSpec& tower, const GelfandPoint& x,
                                               const GelfandPoint& y) {
  require_same_depth(x, y);
  const auto ic = projection_chain(tower, x);
  const auto jc = projection_chain(tower, y);
  if (x.tail != y.tail) return GelfandVerdict::Incomparable;
  if (ic == jc) return GelfandVerdict::Equal;
  if (witness_depth(tower, ic, jc)) return GelfandVerdict::Less;
  if (witness_depth(tower, jc, ic)) return GelfandVerdict::Greater;
  return GelfandVerdict::Incomparable;
}

std::optional<RelationPair> relation_member(const TowerSpec& tower, const GelfandPoint& x,
                                            const GelfandPoint& y, std::size_t depth) {
  require_same_depth(x, y);
  if (x.coords.size() != depth) {
    throw Error(ErrorCode::DepthMismatch, "points have depth " + std::to_string(x.coords.size()) +
                                              ", requested " + std::to_string(depth));
  }
  const auto ic = projection_chain(tower, x);
  const auto jc = projection_chain(tower, y);
  if (x.tail != y.tail) return std::nullopt;
  auto n = witness_depth(tower, ic, jc);
  if (!n) return std::nullopt;
  return RelationPair{x, y, *n, ic[*n - 1], jc[*n - 1]};
}

}  // namespace tuhf
