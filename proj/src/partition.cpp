#include "tuhf/partition.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "tuhf/kernels.hpp"

namespace tuhf {

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

OrderedPartition::OrderedPartition(std::vector<Index> assign, std::size_t block_count)
    : blocks_(block_count), assign_(std::move(assign)) {
  const std::size_t m = assign_.size();
  if (block_count == 0 || m == 0) {
    throw Error(ErrorCode::InvalidAssignment, "partition needs at least one element and one block");
  }
  std::vector<std::size_t> sizes(block_count, 0);
  for (std::size_t x = 0; x < m; ++x) {
    const Index b = assign_[x];
    if (b < 1 || b > block_count) {
      throw Error(ErrorCode::InvalidAssignment, "element " + std::to_string(x + 1) +
                                                    " assigned to block " + std::to_string(b) +
                                                    " outside 1.." + std::to_string(block_count));
    }
    ++sizes[b - 1];
  }
  const std::size_t q = m / block_count;
  for (std::size_t b = 0; b < block_count; ++b) {
    if (sizes[b] != q || m % block_count != 0) {
      throw Error(ErrorCode::UnequalBlockSizes,
                  "block " + std::to_string(b + 1) + " has " + std::to_string(sizes[b]) +
                      " elements, block 1 has " + std::to_string(sizes[0]));
    }
  }
  elements_.resize(m);
  std::vector<std::size_t> fill(block_count, 0);
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t b = assign_[x] - 1;
    elements_[b * q + fill[b]++] = static_cast<Index>(x + 1);
  }
  for (std::size_t b = 1; b < block_count; ++b) {
    for (std::size_t l = 0; l < q; ++l) {
      if (elements_[(b - 1) * q + l] >= elements_[b * q + l]) {
        throw Error(ErrorCode::RankOrderViolation,
                    "(" + std::to_string(b) + ", " + std::to_string(b + 1) + ", " +
                        std::to_string(l + 1) + "): " +
                        std::to_string(elements_[(b - 1) * q + l]) + " > " +
                        std::to_string(elements_[b * q + l]) + " at rank " +
                        std::to_string(l + 1));
      }
    }
  }
}

OrderedPartition OrderedPartition::from_assignment(std::vector<Index> assign,
                                                   std::size_t block_count) {
  return OrderedPartition(std::move(assign), block_count);
}

OrderedPartition OrderedPartition::from_blocks(const std::vector<std::vector<Index>>& blocks) {
  std::size_t m = 0;
  for (const auto& b : blocks) m += b.size();
  std::vector<Index> assign(m, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Index x : blocks[i]) {
      if (x < 1 || x > m || assign[x - 1] != 0) {
        throw Error(ErrorCode::InvalidAssignment,
                    "blocks do not partition 1.." + std::to_string(m) + " (element " +
                        std::to_string(x) + ")");
      }
      assign[x - 1] = static_cast<Index>(i + 1);
    }
  }
  return OrderedPartition(std::move(assign), blocks.size());
}

OrderedPartition OrderedPartition::identity(std::size_t m) {
  std::vector<Index> assign(m);
  for (std::size_t x = 0; x < m; ++x) assign[x] = static_cast<Index>(x + 1);
  return OrderedPartition(std::move(assign), m);
}

std::span<const Index> OrderedPartition::block(std::size_t i) const {
  const std::size_t q = block_size();
  return std::span<const Index>(elements_).subspan((i - 1) * q, q);
}

Index OrderedPartition::element_at(std::size_t i, std::size_t rank) const {
  return elements_[(i - 1) * block_size() + (rank - 1)];
}

std::size_t OrderedPartition::rank_of(Index element) const {
  auto blk = block(block_of(element));
  return static_cast<std::size_t>(std::lower_bound(blk.begin(), blk.end(), element) - blk.begin()) + 1;
}

namespace {

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

OrderedPartition OrderedPartition::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string token;
  std::optional<std::size_t> m, n;
  std::optional<std::string> blocks_text;
  while (is >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value, got '" + token + "'");
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "m") {
      m = parse_count(value, "m");
    } else if (key == "n") {
      n = parse_count(value, "n");
    } else if (key == "blocks") {
      blocks_text = value;
    } else {
      throw Error(ErrorCode::ParseError, "unknown partition field '" + key + "'");
    }
  }
  if (!m || !n || !blocks_text) {
    throw Error(ErrorCode::ParseError, "partition needs m=, n= and blocks=");
  }
  std::vector<std::vector<Index>> blocks;
  std::string_view rest = *blocks_text;
  while (true) {
    auto semi = rest.find(';');
    std::string_view blk = rest.substr(0, semi);
    std::vector<Index> elems;
    while (!blk.empty()) {
      auto comma = blk.find(',');
      elems.push_back(static_cast<Index>(parse_count(blk.substr(0, comma), "element")));
      if (comma == std::string_view::npos) break;
      blk.remove_prefix(comma + 1);
    }
    blocks.push_back(std::move(elems));
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  if (blocks.size() != *n) {
    throw Error(ErrorCode::ParseError, "n=" + std::to_string(*n) + " but " +
                                           std::to_string(blocks.size()) + " blocks given");
  }
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  if (total != *m) {
    throw Error(ErrorCode::ParseError, "m=" + std::to_string(*m) + " but blocks hold " +
                                           std::to_string(total) + " elements");
  }
  return from_blocks(blocks);
}

std::string OrderedPartition::to_string() const {
  std::ostringstream os;
  os << "m=" << ground_size() << " n=" << block_count() << " blocks=";
  for (std::size_t i = 1; i <= block_count(); ++i) {
    if (i > 1) os << ';';
    bool first = true;
    for (Index x : block(i)) {
      if (!first) os << ',';
      first = false;
      os << x;
    }
  }
  return os.str();
}

OrderedSubpartition::OrderedSubpartition(std::size_t ground_size,
                                         std::vector<std::vector<Index>> blocks)
    : ground_(ground_size), blocks_(std::move(blocks)) {
  while (!blocks_.empty() && blocks_.back().empty()) blocks_.pop_back();
}

bool OrderedSubpartition::is_valid() const {
  std::set<Index> seen;
  for (const auto& b : blocks_) {
    if (!std::is_sorted(b.begin(), b.end())) return false;
    for (Index x : b) {
      if (x < 1 || x > ground_ || !seen.insert(x).second) return false;
    }
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if (blocks_[i].size() < blocks_[j].size()) return false;
      for (std::size_t l = 0; l < blocks_[j].size(); ++l) {
        if (blocks_[i][l] >= blocks_[j][l]) return false;
      }
    }
  }
  return true;
}

Ordering compare(const OrderedPartition& a, const OrderedPartition& b) {
  if (a.ground_size() != b.ground_size() || a.block_count() != b.block_count()) {
    throw Error(ErrorCode::ShapeMismatch, "compare needs partitions of the same shape");
  }
  const auto& x = a.assignment();
  const auto& y = b.assignment();
  auto [ix, iy] = std::mismatch(x.begin(), x.end(), y.begin());
  if (ix == x.end()) return Ordering::Equal;
  return *ix < *iy ? Ordering::Less : Ordering::Greater;
}

OrderedSubpartition restrict_prefix(const OrderedPartition& p, std::size_t prefix) {
  if (prefix < 1 || prefix > p.ground_size()) {
    throw Error(ErrorCode::OutOfRange, "prefix " + std::to_string(prefix) + " outside 1.." +
                                           std::to_string(p.ground_size()));
  }
  std::vector<std::vector<Index>> blocks(p.block_count());
  for (std::size_t i = 1; i <= p.block_count(); ++i) {
    for (Index x : p.block(i)) {
      if (x > prefix) break;
      blocks[i - 1].push_back(x);
    }
  }
  return OrderedSubpartition(prefix, std::move(blocks));
}

std::vector<Run> runs_of(std::span<const Index> sorted) {
  std::vector<Run> out;
  for (Index x : sorted) {
    if (!out.empty() && out.back().hi + 1 == x) {
      out.back().hi = x;
    } else {
      out.push_back(Run{x, x});
    }
  }
  return out;
}

RunGrid interleaved_runs(const OrderedPartition& p) {
  const std::size_t k = p.block_count();
  struct Tagged {
    Run run;
    std::size_t column;
  };
  std::vector<Tagged> all;
  for (std::size_t i = 1; i <= k; ++i) {
    for (const Run& r : runs_of(p.block(i))) all.push_back({r, i - 1});
  }
  std::sort(all.begin(), all.end(),
            [](const Tagged& a, const Tagged& b) { return a.run.lo < b.run.lo; });

  RunGrid grid;
  grid.columns = k;
  std::size_t next = 0;  // first free flattened cell
  for (const auto& [run, column] : all) {
    const std::size_t cell = next + (column + k - next % k) % k;
    const std::size_t row = cell / k;
    while (grid.rows.size() <= row) grid.rows.emplace_back(k);
    grid.rows[row][column] = run;
    next = cell + 1;
  }
  return grid;
}

bool psize_oracle(const std::vector<Run>& r_runs, const std::vector<std::optional<Run>>& s_runs,
                  const OrderedPartition& embedding) {
  auto violated = [](const std::string& which) {
    throw Error(ErrorCode::HypothesisViolated, which);
  };
  const std::size_t n = r_runs.size();
  const std::size_t r = embedding.block_count();
  const std::size_t s = embedding.ground_size();
  if (n == 0) violated("no R runs");
  if (s_runs.size() != n + 1) violated("need exactly n+1 S runs");
  for (std::size_t i = 0; i < n; ++i) {
    const Run& ri = r_runs[i];
    if (ri.lo < 1 || ri.lo > ri.hi || ri.hi > r) violated("R run outside 1..r");
    if (i > 0 && r_runs[i - 1].hi >= ri.lo) violated("R runs not increasing");
  }
  std::optional<Index> prev_hi;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!s_runs[i]) {
      if (i < n) violated("S_1..S_n must be nonempty");
      continue;
    }
    const Run& si = *s_runs[i];
    if (si.lo < 1 || si.lo > si.hi || si.hi > s) violated("S run outside 1..s");
    if (prev_hi && *prev_hi >= si.lo) violated("S runs not increasing");
    prev_hi = si.hi;
    if (i < n && si.size() != s_runs[0]->size()) violated("|S_1| = ... = |S_n| fails");
  }
  // image of each R_i, and image(R) = union(S) as sets
  std::vector<char> in_image(s + 1, 0), in_s(s + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> image_i(s + 1, 0);
    for (Index e = r_runs[i].lo; e <= r_runs[i].hi; ++e) {
      for (Index x : embedding.block(e)) {
        image_i[x] = 1;
        in_image[x] = 1;
      }
    }
    for (Index x = s_runs[i]->lo; x <= s_runs[i]->hi; ++x) {
      if (!image_i[x]) violated("image(R_" + std::to_string(i + 1) + ") does not contain S_" +
                                std::to_string(i + 1));
    }
  }
  for (const auto& si : s_runs) {
    if (!si) continue;
    for (Index x = si->lo; x <= si->hi; ++x) in_s[x] = 1;
  }
  if (in_image != in_s) violated("image(R) differs from union(S)");

  for (std::size_t i = 1; i < n; ++i) {
    if (r_runs[i - 1].size() > r_runs[i].size()) return false;
  }
  return true;
}

OrderedPartition compose(const OrderedPartition& outer, const OrderedPartition& inner) {
  if (outer.block_count() != inner.ground_size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "outer has " + std::to_string(outer.block_count()) + " blocks but inner acts on " +
                    std::to_string(inner.ground_size()) + " elements");
  }
  return OrderedPartition::from_assignment(
      kernels::parallel::compose_assignment(outer.assignment(), inner.assignment()),
      inner.block_count());
}

void for_each_ordered_partition(std::size_t m, std::size_t n,
                                const std::function<void(const OrderedPartition&)>& visit) {
  if (n == 0 || m % n != 0) return;
  const std::size_t q = m / n;
  std::vector<Index> assign(m);
  std::vector<std::size_t> count(n, 0);
  std::function<void(std::size_t)> place = [&](std::size_t x) {
    if (x == m) {
      visit(OrderedPartition::from_assignment(assign, n));
      return;
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (count[b] == q) continue;
      if (b > 0 && count[b - 1] <= count[b]) continue;
      assign[x] = static_cast<Index>(b + 1);
      ++count[b];
      place(x + 1);
      --count[b];
    }
  };
  place(0);
}

OrderedPartition random_ordered_partition(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  if (n == 0 || m % n != 0) {
    throw Error(ErrorCode::UnequalBlockSizes, std::to_string(n) + " does not divide " + std::to_string(m));
  }
  const std::size_t q = m / n;
  std::vector<Index> assign(m);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::size_t> allowed;
  for (std::size_t x = 0; x < m; ++x) {
    allowed.clear();
    for (std::size_t b = 0; b < n; ++b) {
      if (count[b] < q && (b == 0 || count[b - 1] > count[b])) allowed.push_back(b);
    }
    std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
    const std::size_t b = allowed[pick(rng)];
    assign[x] = static_cast<Index>(b + 1);
    ++count[b];
  }
  return OrderedPartition::from_assignment(std::move(assign), n);
}

}  // namespace tuhf
