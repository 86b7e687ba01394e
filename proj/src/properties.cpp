#include "tuhf/properties.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "tuhf/gelfand.hpp"
#include "tuhf/matrix.hpp"

namespace tuhf {

namespace {

constexpr std::size_t kSizeCap = std::size_t{1} << 20;
const std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

using CaseFn = std::function<std::optional<std::string>(std::mt19937_64&, std::size_t)>;

PropertyOutcome run_cases(const std::string& name, std::uint64_t seed, std::size_t cases, const CaseFn& fn) {
  PropertyOutcome out;
  out.name = name;
  out.cases = cases;
  const std::uint64_t salt = fnv1a(name);
  std::optional<std::pair<std::size_t, std::string>> first;
  std::size_t failures = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failures)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(cases); ++c) {
    std::mt19937_64 rng(seed ^ salt ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(c + 1)));
    std::optional<std::string> failure;
    try {
      failure = fn(rng, static_cast<std::size_t>(c));
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      ++failures;
#pragma omp critical(property_first_failure)
      if (!first || first->first > static_cast<std::size_t>(c)) first = {static_cast<std::size_t>(c), *failure};
    }
  }
  out.failures = failures;
  if (first) out.detail = "case " + std::to_string(first->first) + ": " + first->second;
  return out;
}

PropertyOutcome skipped(const std::string& name, const std::string& why) {
  PropertyOutcome out;
  out.name = name;
  out.skipped = true;
  out.detail = why;
  return out;
}

// Largest level n <= max_level with k_n <= cap.
std::size_t deepest_level(const TowerSpec& tower, std::size_t max_level, std::size_t cap) {
  std::size_t n = 0;
  while (n < max_level && tower.dim(n + 1) <= cap) ++n;
  return n;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t p = a.dim(), q = b.dim();
  ComplexMatrix out(p * q);
  for (std::size_t r1 = 0; r1 < p; ++r1)
    for (std::size_t c1 = 0; c1 < p; ++c1)
      for (std::size_t r2 = 0; r2 < q; ++r2)
        for (std::size_t c2 = 0; c2 < q; ++c2) out(r1 * q + r2, c1 * q + c2) = a(r1, c1) * b(r2, c2);
  return out;
}

Complex random_phase(std::mt19937_64& rng) {
  return std::polar(1.0, std::uniform_real_distribution<double>(0.0, 6.283185307179586)(rng));
}

std::vector<GelfandPoint> all_points(const TowerSpec& tower, std::size_t depth) {
  std::vector<std::uint64_t> ratios;
  BigInt prev = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    ratios.push_back(static_cast<std::uint64_t>(tower.dim(n) / prev));
    prev = tower.dim(n);
  }
  std::vector<GelfandPoint> out;
  std::vector<std::uint64_t> coords(depth, 0);
  while (true) {
    out.push_back({coords});
    std::size_t i = depth;
    while (i > 0 && ++coords[i - 1] == ratios[i - 1]) coords[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

GelfandPoint random_point(const TowerSpec& tower, std::size_t depth, std::mt19937_64& rng) {
  GelfandPoint x;
  BigInt prev = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    x.coords.push_back(uniform(rng, 0, static_cast<std::uint64_t>(tower.dim(n) / prev) - 1));
    prev = tower.dim(n);
  }
  return x;
}

}  // namespace

TowerSpec random_alternating_tower(std::mt19937_64& rng, const RandomTowerOptions& options) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : kPrimes) {
    if (p <= options.max_prime && p <= options.max_ratio) primes.push_back(p);
  }
  if (primes.empty()) throw Error(ErrorCode::OutOfRange, "no primes fit the ratio bound");
  const std::uint64_t p = primes[uniform(rng, 0, primes.size() - 1)];
  std::size_t len = uniform(rng, 1, std::max<std::size_t>(options.max_cycle, 1));
  const bool together = p * p <= options.max_ratio;
  if (!together && len == 1) len = 2;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> steps(len, {1, 1});
  const std::size_t a = uniform(rng, 0, len - 1);
  std::size_t b = uniform(rng, 0, len - 1);
  if (!together) {
    while (b == a) b = uniform(rng, 0, len - 1);
  }
  steps[a].first *= p;
  steps[b].second *= p;
  for (auto& [s, t] : steps) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const std::uint64_t q = primes[uniform(rng, 0, primes.size() - 1)];
      if (s * t * q > options.max_ratio) continue;
      (uniform(rng, 0, 1) ? s : t) *= q;
    }
  }
  std::vector<Descriptor> cycle;
  for (auto [s, t] : steps) cycle.push_back(AlternatingStep{s, t});
  std::vector<Descriptor> preamble;
  if (options.allow_preamble && uniform(rng, 0, 2) == 0) {
    const std::uint64_t q = primes[uniform(rng, 0, std::min<std::size_t>(primes.size(), 3) - 1)];
    preamble.push_back(uniform(rng, 0, 1) ? Descriptor{AlternatingStep{q, 1}} : Descriptor{AlternatingStep{1, q}});
  }
  return TowerSpec(uniform(rng, options.min_k1, options.max_k1), std::move(preamble), std::move(cycle));
}

ShiftWord random_word(const TowerSpec& tower, std::mt19937_64& rng, unsigned max_exponent, bool non_identity) {
  const auto primes = common_infinite_primes(tower);
  if (primes.empty() || max_exponent == 0) {
    if (non_identity) throw Error(ErrorCode::InvalidShiftWord, "tower has no common infinite prime");
    return {};
  }
  const std::vector<std::uint64_t> list(primes.begin(), primes.end());
  while (true) {
    BigInt u = 1, v = 1;
    for (std::uint64_t p : list) {
      const long e = static_cast<long>(uniform(rng, 0, 2 * max_exponent)) - static_cast<long>(max_exponent);
      for (long i = 0; i < std::labs(e); ++i) (e > 0 ? u : v) *= p;
    }
    ShiftWord w(u, v);
    if (!non_identity || !w.is_identity()) return w;
  }
}

std::string PropertyOutcome::to_string() const {
  std::ostringstream os;
  if (skipped) {
    os << "SKIP " << name << ": " << detail;
  } else if (failures == 0) {
    os << "PASS " << name << " (" << cases << " cases)";
  } else {
    os << "FAIL " << name << " (" << failures << " of " << cases << " cases): " << detail;
  }
  return os.str();
}

std::vector<PropertyOutcome> run_property_suites(const TowerSpec& tower, std::uint64_t seed, std::size_t cases) {
  std::vector<PropertyOutcome> out;

  out.push_back(run_cases("tower.round_trip", seed, 1, [&](auto&, std::size_t) -> std::optional<std::string> {
    if (load_tower(format_tower(tower)) != tower) return "load(format(tower)) differs";
    return std::nullopt;
  }));

  out.push_back(run_cases("tower.dimensions", seed, 12, [&](auto&, std::size_t c) -> std::optional<std::string> {
    const std::size_t n = c + 1;
    if (n > 1) {
      const BigInt ratio = tower.dim(n) / tower.dim(n - 1);
      if (tower.dim(n - 1) * ratio != tower.dim(n)) return "k_" + std::to_string(n) + " not a multiple of k_" + std::to_string(n - 1);
      if (tower.dim(n) <= kSizeCap && BigInt(tower.embedding(n - 1).k_from()) != tower.dim(n - 1)) {
        return "embedding " + std::to_string(n - 1) + " starts at the wrong level";
      }
    }
    const LevelDims d = tower.level_dims(n);
    if (d.s && *d.s * *d.t != d.k) return "s_n * t_n != k_n at n = " + std::to_string(n);
    return std::nullopt;
  }));

  {
    const std::size_t depth = deepest_level(tower, 6, 4096);
    if (depth < 2) {
      out.push_back(skipped("embedding.composite", "levels too large"));
    } else {
      out.push_back(run_cases("embedding.composite", seed, depth - 1, [&](auto&, std::size_t c) -> std::optional<std::string> {
        const std::size_t from = c + 1;
        RegularEmbedding acc = identity_embedding(static_cast<std::size_t>(tower.dim(from)));
        for (std::size_t to = from + 1; to <= depth; ++to) {
          acc = compose_embeddings(tower.embedding(to - 1), acc);
          if (acc != tower.composite(from, to)) {
            return "composite(" + std::to_string(from) + ", " + std::to_string(to) + ") differs from stepwise composition";
          }
        }
        return std::nullopt;
      }));
    }
  }

  const bool alternating_form = tower.is_alternating_form();
  const std::set<std::uint64_t> primes = alternating_form ? common_infinite_primes(tower) : std::set<std::uint64_t>{};
  const char* shift_skip = !alternating_form ? "tower is not alternating-form" : "no common infinite prime";

  if (primes.empty()) {
    for (const char* name : {"shift.well_defined", "shift.commute", "factor.round_trip", "torsion.free"}) {
      out.push_back(skipped(name, shift_skip));
    }
  } else {
    const TowerSpec normal = normalize_for_primes(tower);
    const std::vector<std::uint64_t> plist(primes.begin(), primes.end());
    out.push_back(run_cases("shift.well_defined", seed, plist.size() * 4, [&](auto&, std::size_t c) -> std::optional<std::string> {
      const std::uint64_t p = plist[c / 4];
      const std::size_t n = c % 4 + 1;
      if (normal.dim(n + 2) > kSizeCap) return std::nullopt;
      const auto lhs = compose(normal.embedding(n + 1).diag(), shift_auto(normal, p, n).action);
      const auto rhs = compose(shift_auto(normal, p, n + 1).action, normal.embedding(n).diag());
      if (lhs != rhs) return "theta_" + std::to_string(p) + " at level " + std::to_string(n);
      return std::nullopt;
    }));
    out.push_back(run_cases("shift.commute", seed, plist.size() * plist.size(), [&](auto&, std::size_t c) -> std::optional<std::string> {
      const std::uint64_t p = plist[c / plist.size()], q = plist[c % plist.size()];
      if (normal.dim(3) > kSizeCap) return std::nullopt;
      const auto pq = compose_actions(shift_auto(normal, q, 2), shift_auto(normal, p, 1));
      const auto qp = compose_actions(shift_auto(normal, p, 2), shift_auto(normal, q, 1));
      if (pq.action != qp.action) return std::to_string(p) + " and " + std::to_string(q) + " do not commute";
      return std::nullopt;
    }));
    out.push_back(run_cases("factor.round_trip", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
      const ShiftWord w = random_word(tower, rng, 2, false);
      const std::size_t a = minimal_target_level(tower, w, 1);
      const std::size_t b = std::max(a, minimal_target_level(tower, w, 2));
      if (tower.dim(b) > kSizeCap) return std::nullopt;
      const std::vector<FiniteAutoData> data{materialize_word(tower, w, 1, a), materialize_word(tower, w, 2, b)};
      const ShiftWord got = factor_automorphism(tower, data).word;
      if (got != w) return "materialized " + w.to_string() + ", factored " + got.to_string();
      return std::nullopt;
    }));
    out.push_back(run_cases("torsion.free", seed, cases, [&](std::mt19937_64& rng, std::size_t c) -> std::optional<std::string> {
      const std::size_t m = c % 6 + 1;
      if (c % 7 == 0) {
        if (!torsion_check(tower, ShiftWord{}, m)) return "identity word reported as non-identity";
        return std::nullopt;
      }
      const ShiftWord w = random_word(tower, rng, 1, true);
      if (torsion_check(tower, w, m)) return w.to_string() + " to the power " + std::to_string(m) + " is the identity";
      return std::nullopt;
    }));
  }
  out.push_back(run_cases("factor.identity", seed, 3, [&](auto&, std::size_t c) -> std::optional<std::string> {
    if (!alternating_form) return std::nullopt;
    const std::size_t m = c + 1;
    if (tower.dim(m + 1) > kSizeCap || tower.dim(m) < 2) return std::nullopt;
    const ShiftWord got = factor_automorphism(tower, {identity_action(tower, m, m + 1)}).word;
    if (!got.is_identity()) return "own embedding factored as " + got.to_string();
    return std::nullopt;
  }));

  {
    const std::size_t depth = deepest_level(tower, 3, 4096);
    if (depth == 0) {
      for (const char* name : {"gelfand.total_order", "gelfand.relation", "gelfand.condition_agreement"}) {
        out.push_back(skipped(name, "first level too large"));
      }
    } else {
      out.push_back(run_cases("gelfand.total_order", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
        const GelfandPoint x = random_point(tower, depth, rng), y = random_point(tower, depth, rng),
                           z = random_point(tower, depth, rng);
        const auto xy = gelfand_compare(tower, x, y), yx = gelfand_compare(tower, y, x);
        const bool anti = (xy == GelfandVerdict::Less && yx == GelfandVerdict::Greater) ||
                          (xy == GelfandVerdict::Greater && yx == GelfandVerdict::Less) ||
                          (xy == GelfandVerdict::Equal && yx == GelfandVerdict::Equal && x == y);
        if (!anti) return "antisymmetry fails for " + x.to_string() + ", " + y.to_string();
        auto le = [&](const GelfandPoint& a, const GelfandPoint& b) { return gelfand_compare(tower, a, b) != GelfandVerdict::Greater; };
        if (le(x, y) && le(y, z) && !le(x, z)) return "transitivity fails";
        return std::nullopt;
      }));
      out.push_back(run_cases("gelfand.relation", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
        const GelfandPoint x = random_point(tower, depth, rng), y = random_point(tower, depth, rng);
        const auto verdict = gelfand_compare_via_projections(tower, x, y);
        const auto rel = relation_member(tower, x, y, depth);
        const bool expect = verdict == GelfandVerdict::Less || verdict == GelfandVerdict::Equal;
        if (rel.has_value() != expect) return "witness presence disagrees with verdict " + std::string(to_string(verdict));
        if (rel) {
          const auto ic = projection_chain(tower, x), jc = projection_chain(tower, y);
          if (ic[rel->n - 1] != rel->i || jc[rel->n - 1] != rel->j || rel->i > rel->j) return "witness does not reconstruct";
        }
        return std::nullopt;
      }));
      const bool exhaustive = tower.dim(depth) <= 64;
      const std::vector<GelfandPoint> points = exhaustive ? all_points(tower, depth) : std::vector<GelfandPoint>{};
      const std::size_t pair_cases = exhaustive ? points.size() * points.size() : cases;
      out.push_back(run_cases("gelfand.condition_agreement", seed, pair_cases, [&](std::mt19937_64& rng, std::size_t c) -> std::optional<std::string> {
        GelfandPoint x, y;
        if (exhaustive) {
          x = points[c / points.size()];
          y = points[c % points.size()];
        } else {
          x = random_point(tower, depth, rng);
          y = random_point(tower, depth, rng);
        }
        const auto lex = gelfand_compare(tower, x, y), proj = gelfand_compare_via_projections(tower, x, y);
        if (lex != proj) {
          return x.to_string() + " vs " + y.to_string() + ": lexicographic " + to_string(lex) + ", projections " + to_string(proj);
        }
        return std::nullopt;
      }));
    }
  }

  out.push_back(run_cases("partition.order_preservation", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    const std::size_t n = uniform(rng, 1, 4), q = uniform(rng, 1, 24 / n), m = n * q;
    const std::size_t m_to = m * uniform(rng, 1, 96 / m);
    OrderedPartition a = random_ordered_partition(m, n, rng), b = random_ordered_partition(m, n, rng);
    if (compare(a, b) == Ordering::Greater) std::swap(a, b);
    const OrderedPartition phi = random_ordered_partition(m_to, m, rng);
    if (compare(compose(phi, a), compose(phi, b)) != compare(a, b)) return "composition changed the order";
    return std::nullopt;
  }));

  out.push_back(run_cases("partition.restrict_prefix", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    const std::size_t n = uniform(rng, 1, 6), m = n * uniform(rng, 1, 8);
    const OrderedPartition p = random_ordered_partition(m, n, rng);
    const std::size_t prefix = uniform(rng, 1, m);
    if (!restrict_prefix(p, prefix).is_valid()) return "prefix " + std::to_string(prefix) + " of " + p.to_string();
    return std::nullopt;
  }));

  out.push_back(run_cases("matrix.kronecker", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    const std::size_t k = uniform(rng, 1, 4), s = uniform(rng, 1, 4), t = uniform(rng, 1, 4);
    UpperTriangular m(k);
    std::normal_distribution<double> g;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = r; c < k; ++c) m.set(r, c, {g(rng), g(rng)});
    const ComplexMatrix expect = kron(kron(ComplexMatrix::identity(s), m.matrix()), ComplexMatrix::identity(t));
    const double err = max_abs_difference(apply_to_matrix(alternating(k, s, t), m).matrix(), expect);
    if (err > 1e-12) return "deviation " + std::to_string(err);
    return std::nullopt;
  }));

  out.push_back(run_cases("matrix.normalizer_split", seed, cases, [&](std::mt19937_64& rng, std::size_t) -> std::optional<std::string> {
    const std::size_t k = uniform(rng, 1, 16);
    PartialPermutationMatrix w(k);
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t r = uniform(rng, 0, c);
      if (uniform(rng, 0, 2) != 0 && !w.column_of(r)) w.assign(c, r);
    }
    DiagonalUnitary d(k);
    for (std::size_t r = 0; r < k; ++r) d.set_phase(r, random_phase(rng));
    const NormalizerSplit split = normalizer_split(UpperTriangular(d.to_dense() * w.to_dense()));
    if (!(split.w == w)) return "partial permutation not recovered";
    for (std::size_t r = 0; r < k; ++r) {
      const Complex expect = w.column_of(r) ? d.phase(r) : Complex{1.0, 0.0};
      if (std::abs(split.d.phase(r) - expect) > 1e-9) return "phase of row " + std::to_string(r);
    }
    return std::nullopt;
  }));

  return out;
}

}  // namespace tuhf
