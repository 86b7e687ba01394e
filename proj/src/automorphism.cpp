#include "tuhf/automorphism.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <boost/integer/common_factor.hpp>

#include "tuhf/kernels.hpp"

namespace tuhf {

namespace {

BigInt gcd(const BigInt& a, const BigInt& b) { return boost::integer::gcd(a, b); }

std::uint64_t saturate(const BigInt& b) {
  if (b > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(b);
}

BigInt parse_natural(std::string_view text, ErrorCode code) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(code, "'" + std::string(text) + "' is not a natural number");
  }
  return BigInt(std::string(text));
}

// The I_s (x) . (x) I_t pattern on k blocks, evaluated one element at a time.
struct LazyAlternating {
  std::uint64_t k, t;

  LazyAlternating(const BigInt& k_, const BigInt& t_) : k(saturate(k_)), t(saturate(t_)) {}

  // 0-based block of 0-based element x.
  std::uint64_t block_of(std::uint64_t x) const { return (x / t) % k; }
};

constexpr std::uint64_t kScanCap = std::uint64_t{1} << 20;
constexpr std::int64_t kScanChunk = std::int64_t{1} << 16;

}  // namespace

ShiftWord::ShiftWord(BigInt u, BigInt v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_ <= 0 || v_ <= 0) throw Error(ErrorCode::InvalidShiftWord, "shift word entries must be positive");
  if (gcd(u_, v_) != 1) {
    throw Error(ErrorCode::InvalidShiftWord, "shift word " + u_.str() + "/" + v_.str() + " is not reduced");
  }
}

ShiftWord ShiftWord::reduced(const BigInt& u, const BigInt& v) {
  if (u <= 0 || v <= 0) throw Error(ErrorCode::InvalidShiftWord, "shift word entries must be positive");
  const BigInt g = gcd(u, v);
  return ShiftWord(u / g, v / g);
}

ShiftWord ShiftWord::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return ShiftWord(parse_natural(text, ErrorCode::MalformedToken), 1);
  }
  return ShiftWord(parse_natural(text.substr(0, slash), ErrorCode::MalformedToken),
                   parse_natural(text.substr(slash + 1), ErrorCode::MalformedToken));
}

ShiftWord ShiftWord::power(std::size_t m) const {
  return ShiftWord(boost::multiprecision::pow(u_, static_cast<unsigned>(m)),
                   boost::multiprecision::pow(v_, static_cast<unsigned>(m)));
}

std::string ShiftWord::to_string() const { return u_.str() + "/" + v_.str(); }

ShiftWord operator*(const ShiftWord& a, const ShiftWord& b) {
  return ShiftWord::reduced(a.u_ * b.u_, a.v_ * b.v_);
}

std::set<std::uint64_t> common_infinite_primes(const TowerSpec& tower) {
  auto [s, t] = supernatural_pair(tower);
  std::set<std::uint64_t> out;
  const auto ts = infinite_primes(t);
  for (std::uint64_t p : infinite_primes(s)) {
    if (ts.count(p)) out.insert(p);
  }
  return out;
}

void validate_word(const TowerSpec& tower, const ShiftWord& w) {
  const auto allowed = common_infinite_primes(tower);
  for (const BigInt* part : {&w.u(), &w.v()}) {
    for (auto [p, e] : factorize(*part)) {
      if (!allowed.count(p)) {
        throw Error(ErrorCode::InvalidShiftWord, "word " + w.to_string() + ": prime " + std::to_string(p) +
                                                     " does not divide both s and t infinitely");
      }
    }
  }
}

std::vector<FiniteAutoData> parse_auto_data(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<FiniteAutoData> out;
  bool pending = false;
  std::size_t from = 0, to = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "levels") {
      if (pending) fail("'levels' without a following 'action'");
      long long m = 0, m_to = 0;
      std::string extra;
      if (!(ls >> m >> m_to) || (ls >> extra) || m < 1 || m_to < 1) fail("expected 'levels <m> <mprime>'");
      pending = true;
      from = static_cast<std::size_t>(m);
      to = static_cast<std::size_t>(m_to);
    } else if (key == "action") {
      if (!pending) fail("'action' before 'levels'");
      std::string rest;
      std::getline(ls, rest);
      try {
        out.push_back({from, to, OrderedPartition::parse(rest)});
      } catch (const Error& e) {
        if (is_parse_error(e.code())) fail(e.what());
        throw;
      }
      pending = false;
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (pending) throw Error(ErrorCode::ParseError, "trailing 'levels' without 'action'");
  return out;
}

std::vector<FiniteAutoData> load_auto_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_auto_data(buf.str());
}

std::string format_auto_data(const std::vector<FiniteAutoData>& data) {
  std::ostringstream os;
  for (const auto& d : data) {
    os << "levels " << d.level_from << ' ' << d.level_to << '\n';
    os << "action " << d.action.to_string() << '\n';
  }
  return os.str();
}

FiniteAutoData compose_actions(const FiniteAutoData& second, const FiniteAutoData& first) {
  if (first.level_to != second.level_from || first.action.ground_size() != second.action.block_count()) {
    throw Error(ErrorCode::ShapeMismatch, "actions do not chain: first ends at level " +
                                              std::to_string(first.level_to) + ", second starts at " +
                                              std::to_string(second.level_from));
  }
  return {first.level_from, second.level_to, compose(second.action, first.action)};
}

FiniteAutoData identity_action(const TowerSpec& tower, std::size_t m, std::size_t m_to) {
  return {m, m_to, tower.composite(m, m_to).diag()};
}

FiniteAutoData materialize_word(const TowerSpec& tower, const ShiftWord& w, std::size_t m,
                                std::size_t m_to) {
  require_alternating(tower);
  if (m == 0 || m_to <= m) {
    throw Error(ErrorCode::OutOfRange, "materialization needs levels 1 <= m < m'");
  }
  auto [S, T] = tower.split_ratio(m, m_to);
  if (S % w.v() != 0 || T % w.u() != 0) {
    throw Error(ErrorCode::NotMaterializable, "word " + w.to_string() + " does not fit levels " +
                                                  std::to_string(m) + ".." + std::to_string(m_to) +
                                                  " (s ratio " + S.str() + ", t ratio " + T.str() + ")");
  }
  const BigInt sigma = w.u() * S / w.v();
  const BigInt tau = T * w.v() / w.u();
  const std::size_t k = to_size(tower.dim(m));
  to_size(tower.dim(m_to));
  return {m, m_to, alternating(k, static_cast<std::size_t>(sigma), static_cast<std::size_t>(tau)).diag()};
}

std::size_t minimal_target_level(const TowerSpec& tower, const ShiftWord& w, std::size_t m) {
  require_alternating(tower);
  validate_word(tower, w);
  if (m == 0) throw Error(ErrorCode::OutOfRange, "levels start at 1");
  // Each pass of the cycle contributes every common prime at least once.
  std::size_t max_exponent = 1;
  for (const BigInt* part : {&w.u(), &w.v()}) {
    for (auto [p, e] : factorize(*part)) max_exponent = std::max<std::size_t>(max_exponent, e);
  }
  const std::size_t limit = m + tower.preamble().size() + tower.cycle().size() * (max_exponent + 1);
  BigInt S = 1, T = 1;
  for (std::size_t m_to = m + 1; m_to <= limit; ++m_to) {
    auto r = split_ratio(tower.descriptor(m_to - 1));
    S *= r->first;
    T *= r->second;
    if (S % w.v() == 0 && T % w.u() == 0) return m_to;
  }
  throw Error(ErrorCode::NotMaterializable, "word " + w.to_string() + " never materializes from level " +
                                                std::to_string(m));
}

FiniteAutoData shift_auto(const TowerSpec& tower, std::uint64_t p, std::size_t n) {
  require_alternating(tower);
  if (!common_infinite_primes(tower).count(p)) {
    throw Error(ErrorCode::PrimeNotCommonInfinite,
                std::to_string(p) + " does not divide both s and t infinitely");
  }
  auto [S, T] = tower.split_ratio(n, n + 1);
  if (S % p != 0 || T % p != 0) {
    throw Error(ErrorCode::TowerNotNormalizedForPrime,
                "level " + std::to_string(n) + ": " + std::to_string(p) + " does not divide both ratios (" +
                    S.str() + ", " + T.str() + ")");
  }
  return materialize_word(tower, ShiftWord(p, 1), n, n + 1);
}

std::vector<FiniteAutoData> shift_auto_levels(const TowerSpec& tower, std::uint64_t p, std::size_t from,
                                              std::size_t to) {
  if (from == 0 || to < from) throw Error(ErrorCode::OutOfRange, "bad level range");
  std::vector<FiniteAutoData> out;
  for (std::size_t n = from; n <= to; ++n) out.push_back(shift_auto(tower, p, n));
  return out;
}

TowerSpec normalize_for_primes(const TowerSpec& tower) {
  require_alternating(tower);
  std::uint64_t sc = 1, tc = 1, sp = 1, tp = 1;
  for (const auto& d : tower.cycle()) {
    auto r = split_ratio(d);
    sc *= r->first;
    tc *= r->second;
  }
  for (const auto& d : tower.preamble()) {
    auto r = split_ratio(d);
    sp *= r->first;
    tp *= r->second;
  }
  std::vector<Descriptor> preamble;
  if (!tower.preamble().empty()) preamble.push_back(AlternatingStep{sp * sc, tp * tc});
  return TowerSpec(tower.k1(), std::move(preamble), {AlternatingStep{sc, tc}}, tower.initial_split());
}

std::optional<IntervalForm> detect_interval_form(const OrderedPartition& q, std::size_t k_m) {
  if (k_m == 0 || q.block_count() != k_m) return std::nullopt;
  const std::size_t n = q.ground_size();
  auto first = q.block(1);
  std::size_t t = 1;
  while (t < first.size() && first[t] == first[t - 1] + 1) ++t;
  if (n % (k_m * t) != 0) return std::nullopt;
  const std::size_t s = n / (k_m * t);
  const auto& assign = q.assignment();
  for (std::size_t x = 0; x < n; ++x) {
    if (assign[x] != (x / t) % k_m + 1) return std::nullopt;
  }
  return IntervalForm{s, t};
}

std::string FactorReport::to_string() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "levels " << e.m << ' ' << e.m_to << " interval " << e.form.s << ' ' << e.form.t << " word "
       << e.word.to_string() << '\n';
  }
  os << "consistent yes\n";
  os << "word " << word.to_string() << '\n';
  return os.str();
}

FactorReport factor_automorphism(const TowerSpec& tower, const std::vector<FiniteAutoData>& data) {
  require_alternating(tower);
  if (data.empty()) throw Error(ErrorCode::InconsistentLevels, "no automorphism data given");
  FactorReport report;
  for (const auto& d : data) {
    const std::string where = "levels " + std::to_string(d.level_from) + ".." + std::to_string(d.level_to);
    if (d.level_from == 0 || d.level_to <= d.level_from) {
      throw Error(ErrorCode::InconsistentLevels, where + ": need m < m'");
    }
    if (BigInt(d.action.block_count()) != tower.dim(d.level_from) ||
        BigInt(d.action.ground_size()) != tower.dim(d.level_to)) {
      throw Error(ErrorCode::ShapeMismatch, where + ": action is not a partition of k_m' into k_m blocks");
    }
    if (d.action.block_count() < 2) {
      throw Error(ErrorCode::NotIntervalForm, where + ": a 1x1 level carries no shift information");
    }
    auto form = detect_interval_form(d.action, d.action.block_count());
    if (!form) throw Error(ErrorCode::NotIntervalForm, where + ": action is not of the form I_s (x) A (x) I_t");
    auto [S, T] = tower.split_ratio(d.level_from, d.level_to);
    ShiftWord w = ShiftWord::reduced(form->s, S);
    validate_word(tower, w);
    if (!report.entries.empty() && w != report.entries.front().word) {
      throw Error(ErrorCode::InconsistentLevels, where + ": expected word " +
                                                     report.entries.front().word.to_string() + ", got " +
                                                     w.to_string());
    }
    report.entries.push_back({d.level_from, d.level_to, *form, w});
  }
  // Nested data must intertwine with the tower embeddings.
  for (const auto& a : data) {
    for (const auto& b : data) {
      if (&a == &b || a.level_from > b.level_from || a.level_to > b.level_to) continue;
      if (a.level_from == b.level_from && a.level_to == b.level_to) {
        if (a.action != b.action) {
          throw Error(ErrorCode::InconsistentLevels, "two different actions on the same levels");
        }
        continue;
      }
      const OrderedPartition lhs = compose(tower.composite(a.level_to, b.level_to).diag(), a.action);
      const OrderedPartition rhs = compose(b.action, tower.composite(a.level_from, b.level_from).diag());
      if (lhs != rhs) {
        throw Error(ErrorCode::InconsistentLevels,
                    "actions on levels " + std::to_string(a.level_from) + ".." + std::to_string(a.level_to) +
                        " and " + std::to_string(b.level_from) + ".." + std::to_string(b.level_to) +
                        " do not commute with the tower embeddings");
      }
    }
  }
  report.word = report.entries.front().word;
  return report;
}

std::size_t out_rank(const TowerSpec& tower) {
  auto [s, t] = supernatural_pair(tower);
  return common_infinite_count(s, t);
}

std::optional<Rational> alternating_iso(const TowerSpec& a, const TowerSpec& b) {
  auto [sa, ta] = supernatural_pair(a);
  auto [sb, tb] = supernatural_pair(b);
  return rational_pair_witness(sa, ta, sb, tb);
}

bool torsion_check(const TowerSpec& tower, const ShiftWord& w, std::size_t m) {
  require_alternating(tower);
  validate_word(tower, w);
  if (m == 0) throw Error(ErrorCode::OutOfRange, "power must be at least 1");
  const bool word_identity = w.power(m).is_identity();

  // Chain m materializations of w, each from where the previous one ended.
  std::vector<LazyAlternating> steps;
  std::size_t level = 1;
  BigInt prod_s = 1, prod_t = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = minimal_target_level(tower, w, level);
    auto [S, T] = tower.split_ratio(level, next);
    const BigInt s = w.u() * S / w.v(), t = T * w.v() / w.u();
    steps.emplace_back(tower.dim(level), t);
    prod_s *= s;
    prod_t *= t;
    level = next;
  }
  auto [S, T] = tower.split_ratio(1, level);
  const LazyAlternating composite(tower.dim(1), T);
  const BigInt n = tower.dim(level);
  const std::uint64_t limit = saturate(n);

  // Dense prefix, then probes around every multiple of the places where a
  // block index can change: T and the running products of the step t's.
  std::vector<std::uint64_t> probes;
  std::vector<BigInt> breaks{T};
  BigInt running = 1;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    running *= it->t;
    breaks.push_back(running);
  }
  bool all_probed = n <= limit;
  const std::uint64_t k1 = saturate(tower.dim(1));
  for (const BigInt& br : breaks) {
    if (br >= limit) {
      all_probed = all_probed && br >= n;
      continue;
    }
    const std::uint64_t step = static_cast<std::uint64_t>(br);
    for (std::uint64_t c = 1; c <= k1 + 1 && step <= (limit - 1) / c; ++c) {
      probes.push_back(c * step - 1);
      probes.push_back(c * step);
    }
  }
  const std::uint64_t dense = std::min(limit, kScanCap);
  auto differs = [&](std::uint64_t xi) {
    std::uint64_t x = xi;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) x = it->block_of(x);
    return x != composite.block_of(xi);
  };

  std::atomic<bool> mismatch = false;
  for (std::uint64_t x : probes) {
    if (x < limit && differs(x)) mismatch = true;
  }
  const std::int64_t chunks = (static_cast<std::int64_t>(dense) + kScanChunk - 1) / kScanChunk;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    if (mismatch.load(std::memory_order_relaxed)) continue;
    const std::uint64_t lo = static_cast<std::uint64_t>(c * kScanChunk);
    const std::uint64_t hi = std::min<std::uint64_t>(dense, lo + kScanChunk);
    for (std::uint64_t xi = lo; xi < hi; ++xi) {
      if (differs(xi)) {
        mismatch = true;
        break;
      }
    }
  }
  bool level_identity = !mismatch;
  if (level_identity && !all_probed) {
    // Breakpoints beyond 64-bit indices: compare the composed pattern's shape.
    level_identity = prod_s == S && prod_t == T;
  }
  if (level_identity != word_identity) {
    throw Error(ErrorCode::InconsistentLevels, "finite-level action of (" + w.to_string() + ")^" +
                                                   std::to_string(m) + " disagrees with word arithmetic");
  }
  return word_identity;
}

FiniteAutoData combine_tensor_autos(const TensorTower& tower, std::size_t n, std::size_t n_to,
                                    const std::vector<ShiftWord>& block_words,
                                    const ShiftWord& global_word) {
  const std::size_t k_n = to_size(tower.phi().dim(n));
  const std::size_t j_n = to_size(tower.psi().dim(n));
  if (block_words.size() != k_n) {
    throw Error(ErrorCode::ShapeMismatch, "need " + std::to_string(k_n) + " block words, got " +
                                              std::to_string(block_words.size()));
  }
  validate_word(tower.phi(), global_word);
  for (const auto& w : block_words) validate_word(tower.psi(), w);
  to_size(tower.dim(n_to));

  const OrderedPartition gamma = materialize_word(tower.phi(), global_word, n, n_to).action;
  std::map<std::string, OrderedPartition> cache;
  std::vector<const OrderedPartition*> theta(k_n);
  for (std::size_t i = 0; i < k_n; ++i) {
    const std::string key = block_words[i].to_string();
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, materialize_word(tower.psi(), block_words[i], n, n_to).action).first;
    }
    theta[i] = &it->second;
  }
  const std::size_t k_N = gamma.ground_size();
  const std::size_t j_N = theta.front()->ground_size();
  std::vector<Index> assign(k_N * j_N);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(k_N); ++a) {
    const Index i = gamma.assignment()[a];
    const auto& th = theta[i - 1]->assignment();
    for (std::size_t b = 0; b < j_N; ++b) {
      assign[a * j_N + b] = static_cast<Index>((i - 1) * j_n + th[b]);
    }
  }
  return {n, n_to, OrderedPartition::from_assignment(std::move(assign), k_n * j_n)};
}

bool dirichlet_dimension_check(std::size_t k) {
  std::size_t upper = 0, lower = 0, diagonal = 0;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (r <= c) ++upper;
      if (r >= c) ++lower;
      if (r == c) ++diagonal;
    }
  }
  return upper + lower - diagonal == k * k;
}

}  // namespace tuhf
