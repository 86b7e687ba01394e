#include "tuhf/supernatural.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

namespace tuhf {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::NonPrimeBase: return "NonPrimeBase";
    case ErrorCode::DuplicatePrime: return "DuplicatePrime";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::InvalidAssignment: return "InvalidAssignment";
    case ErrorCode::UnequalBlockSizes: return "UnequalBlockSizes";
    case ErrorCode::RankOrderViolation: return "RankOrderViolation";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LowerTriangularRequest: return "LowerTriangularRequest";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NotNormalizingPartialIsometry: return "NotNormalizingPartialIsometry";
    case ErrorCode::NonUnimodularPhase: return "NonUnimodularPhase";
    case ErrorCode::PrimeNotCommonInfinite: return "PrimeNotCommonInfinite";
    case ErrorCode::TowerNotNormalizedForPrime: return "TowerNotNormalizedForPrime";
    case ErrorCode::NotIntervalForm: return "NotIntervalForm";
    case ErrorCode::InconsistentLevels: return "InconsistentLevels";
    case ErrorCode::InvalidShiftWord: return "InvalidShiftWord";
    case ErrorCode::NotAlternatingTower: return "NotAlternatingTower";
    case ErrorCode::NotMaterializable: return "NotMaterializable";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::DepthMismatch: return "DepthMismatch";
    case ErrorCode::LevelTooLarge: return "LevelTooLarge";
  }
  return "UnknownError";
}

bool is_parse_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::MalformedToken:
    case ErrorCode::NonPrimeBase:
    case ErrorCode::DuplicatePrime:
    case ErrorCode::InvalidDescriptor:
      return true;
    default:
      return false;
  }
}

std::size_t to_size(const BigInt& value) {
  if (value < 0 || value > BigInt(std::numeric_limits<Index>::max())) {
    throw Error(ErrorCode::LevelTooLarge,
                "dimension " + value.str() + " is too large to materialize");
  }
  return static_cast<std::size_t>(value);
}

std::uint64_t Exponent::value() const {
  if (infinite_) throw std::logic_error("Exponent::value on infinite exponent");
  return value_;
}

Exponent operator+(Exponent a, Exponent b) {
  if (a.infinite_ || b.infinite_) return Exponent::infinite();
  if (a.value_ > std::numeric_limits<std::uint64_t>::max() - b.value_) {
    throw std::overflow_error("supernatural exponent overflow");
  }
  return Exponent::finite(a.value_ + b.value_);
}

std::strong_ordering operator<=>(Exponent a, Exponent b) {
  if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater
                                                    : std::strong_ordering::less;
  return a.value_ <=> b.value_;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; n > 1 && p <= n / p; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(const BigInt& value) {
  if (value < 1) throw std::invalid_argument("factorize: non-positive value");
  if (value <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return factorize(static_cast<std::uint64_t>(value));
  }
  BigInt n = value;
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; n > 1; p += (p == 2 ? 1 : 2)) {
    if (n <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
      for (auto [q, e] : factorize(static_cast<std::uint64_t>(n))) {
        if (!out.empty() && out.back().first == q) {
          out.back().second += e;
        } else {
          out.emplace_back(q, e);
        }
      }
      break;
    }
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_nat(std::string_view token, std::string_view context) {
  token = trim(token);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::MalformedToken,
                "expected a natural number in '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

SupernaturalNumber SupernaturalNumber::parse(std::string_view text) {
  SupernaturalNumber out;
  text = trim(text);
  if (text == "1") return out;
  if (text.empty()) throw Error(ErrorCode::MalformedToken, "empty supernatural literal");

  std::set<std::uint64_t> seen;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    std::string_view term = text.substr(pos, star == std::string_view::npos ? text.npos : star - pos);
    std::size_t caret = term.find('^');
    std::uint64_t p = parse_nat(term.substr(0, caret), term);
    Exponent e = Exponent::finite(1);
    if (caret != std::string_view::npos) {
      std::string_view exp = trim(term.substr(caret + 1));
      if (exp == "inf") {
        e = Exponent::infinite();
      } else {
        e = Exponent::finite(parse_nat(exp, term));
      }
    }
    if (!is_prime(p)) {
      throw Error(ErrorCode::NonPrimeBase, std::to_string(p) + " is not prime");
    }
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::DuplicatePrime, "prime " + std::to_string(p) + " repeated");
    }
    out.absorb(p, e);
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return out;
}

SupernaturalNumber SupernaturalNumber::from_integer(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("supernatural of zero");
  SupernaturalNumber out;
  for (auto [p, e] : factorize(n)) out.absorb(p, Exponent::finite(e));
  return out;
}

void SupernaturalNumber::absorb(std::uint64_t p, Exponent e) {
  if (e.is_zero()) return;
  auto it = support_.find(p);
  if (it == support_.end()) {
    support_.emplace(p, e);
  } else {
    it->second = it->second + e;
  }
}

Exponent SupernaturalNumber::exponent(std::uint64_t p) const {
  auto it = support_.find(p);
  return it == support_.end() ? Exponent::finite(0) : it->second;
}

SupernaturalNumber SupernaturalNumber::infinite_power() const {
  SupernaturalNumber out;
  for (const auto& [p, e] : support_) out.support_.emplace(p, Exponent::infinite());
  return out;
}

std::string SupernaturalNumber::to_string() const {
  if (support_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : support_) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e.is_infinite()) {
      os << "^inf";
    } else if (e.value() != 1) {
      os << '^' << e.value();
    }
  }
  return os.str();
}

SupernaturalNumber multiply(const SupernaturalNumber& a, const SupernaturalNumber& b) {
  SupernaturalNumber out = a;
  for (const auto& [p, e] : b.support()) out.absorb(p, e);
  return out;
}

std::set<std::uint64_t> infinite_primes(const SupernaturalNumber& a) {
  std::set<std::uint64_t> out;
  for (const auto& [p, e] : a.support()) {
    if (e.is_infinite()) out.insert(p);
  }
  return out;
}

std::size_t common_infinite_count(const SupernaturalNumber& s, const SupernaturalNumber& t) {
  auto a = infinite_primes(s);
  auto b = infinite_primes(t);
  std::vector<std::uint64_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.size();
}

std::string Rational::to_string() const { return num.str() + "/" + den.str(); }

namespace {

// Constraint on the p-exponent of r from one equation x = r^sign * y.
// nullopt: unsatisfiable. value with !bound: unconstrained.
struct Constraint {
  bool bound = false;
  BigInt exponent;
};

std::optional<Constraint> constrain(Exponent lhs, Exponent rhs, int sign) {
  if (lhs.is_infinite() && rhs.is_infinite()) return Constraint{};
  if (lhs.is_infinite() != rhs.is_infinite()) return std::nullopt;
  BigInt diff = BigInt(lhs.value()) - BigInt(rhs.value());
  return Constraint{true, sign > 0 ? diff : BigInt(-diff)};
}

}  // namespace

std::optional<Rational> rational_pair_witness(const SupernaturalNumber& s_phi,
                                              const SupernaturalNumber& t_phi,
                                              const SupernaturalNumber& s_psi,
                                              const SupernaturalNumber& t_psi) {
  std::set<std::uint64_t> primes;
  for (const auto* x : {&s_phi, &t_phi, &s_psi, &t_psi}) {
    for (const auto& [p, e] : x->support()) primes.insert(p);
  }
  Rational r;
  for (std::uint64_t p : primes) {
    // s_phi = r * s_psi  =>  e_r = e(s_phi) - e(s_psi)
    // t_phi = r^-1 * t_psi  =>  e_r = e(t_psi) - e(t_phi)
    auto from_s = constrain(s_phi.exponent(p), s_psi.exponent(p), +1);
    auto from_t = constrain(t_phi.exponent(p), t_psi.exponent(p), -1);
    if (!from_s || !from_t) return std::nullopt;
    BigInt e = 0;
    if (from_s->bound && from_t->bound) {
      if (from_s->exponent != from_t->exponent) return std::nullopt;
      e = from_s->exponent;
    } else if (from_s->bound) {
      e = from_s->exponent;
    } else if (from_t->bound) {
      e = from_t->exponent;
    }
    if (e == 0) continue;
    BigInt power = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(abs(e)));
    if (e > 0) {
      r.num *= power;
    } else {
      r.den *= power;
    }
  }
  return r;
}

}  // namespace tuhf
