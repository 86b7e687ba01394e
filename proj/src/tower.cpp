#include "tuhf/tower.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tuhf {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t parse_positive(std::string_view token, ErrorCode code, const std::string& context) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || v == 0) {
    throw Error(code, context + ": expected a positive integer, got '" + std::string(token) + "'");
  }
  return v;
}

BigInt ratio_of(const Descriptor& d) {
  return std::visit(Overloaded{
                        [](const StandardStep& s) { return BigInt(s.mult); },
                        [](const NestStep& s) { return BigInt(s.mult); },
                        [](const AlternatingStep& s) { return BigInt(s.s_mult) * s.t_mult; },
                        [](const PartitionStep& s) { return BigInt(s.diag.block_size()); },
                    },
                    d);
}

}  // namespace

Descriptor parse_descriptor(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string kind;
  is >> kind;
  const std::string context = "descriptor '" + std::string(text) + "'";
  auto next = [&]() {
    std::string tok;
    if (!(is >> tok)) throw Error(ErrorCode::InvalidDescriptor, context + ": missing argument");
    return tok;
  };
  auto finish = [&]() {
    std::string extra;
    if (is >> extra) throw Error(ErrorCode::InvalidDescriptor, context + ": trailing '" + extra + "'");
  };
  if (kind == "std") {
    StandardStep s{parse_positive(next(), ErrorCode::InvalidDescriptor, context)};
    finish();
    return s;
  }
  if (kind == "nest") {
    NestStep s{parse_positive(next(), ErrorCode::InvalidDescriptor, context)};
    finish();
    return s;
  }
  if (kind == "alt") {
    AlternatingStep s;
    s.s_mult = parse_positive(next(), ErrorCode::InvalidDescriptor, context);
    s.t_mult = parse_positive(next(), ErrorCode::InvalidDescriptor, context);
    finish();
    return s;
  }
  if (kind == "part") {
    const std::uint64_t k_to = parse_positive(next(), ErrorCode::InvalidDescriptor, context);
    std::string rest;
    std::getline(is, rest);
    try {
      OrderedPartition diag = OrderedPartition::parse(rest);
      if (diag.ground_size() != k_to) {
        throw Error(ErrorCode::InvalidDescriptor, context + ": k_to differs from m");
      }
      return PartitionStep{std::move(diag)};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidDescriptor) throw;
      throw Error(ErrorCode::InvalidDescriptor, context + ": " + e.what());
    }
  }
  throw Error(ErrorCode::InvalidDescriptor, context + ": unknown kind '" + kind + "'");
}

std::string format_descriptor(const Descriptor& d) {
  return std::visit(
      Overloaded{
          [](const StandardStep& s) { return "std " + std::to_string(s.mult); },
          [](const NestStep& s) { return "nest " + std::to_string(s.mult); },
          [](const AlternatingStep& s) {
            return "alt " + std::to_string(s.s_mult) + " " + std::to_string(s.t_mult);
          },
          [](const PartitionStep& s) {
            return "part " + std::to_string(s.diag.ground_size()) + " " + s.diag.to_string();
          },
      },
      d);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> split_ratio(const Descriptor& d) {
  using R = std::optional<std::pair<std::uint64_t, std::uint64_t>>;
  return std::visit(Overloaded{
                        [](const StandardStep& s) -> R { return std::pair{s.mult, std::uint64_t{1}}; },
                        [](const NestStep& s) -> R { return std::pair{std::uint64_t{1}, s.mult}; },
                        [](const AlternatingStep& s) -> R { return std::pair{s.s_mult, s.t_mult}; },
                        [](const PartitionStep&) -> R { return std::nullopt; },
                    },
                    d);
}

RegularEmbedding realize(const Descriptor& d, std::size_t k) {
  return std::visit(
      Overloaded{
          [k](const StandardStep& s) { return standard(k, s.mult); },
          [k](const NestStep& s) { return nest(k, s.mult); },
          [k](const AlternatingStep& s) { return alternating(k, s.s_mult, s.t_mult); },
          [k](const PartitionStep& s) {
            if (s.diag.block_count() != k) {
              throw Error(ErrorCode::ChainMismatch, "partition starts at T_" +
                                                        std::to_string(s.diag.block_count()) +
                                                        ", level is T_" + std::to_string(k));
            }
            return RegularEmbedding(s.diag);
          },
      },
      d);
}

TowerSpec::TowerSpec(std::uint64_t k1, std::vector<Descriptor> preamble,
                     std::vector<Descriptor> cycle,
                     std::optional<std::pair<std::uint64_t, std::uint64_t>> declared_split)
    : k1_(k1),
      preamble_(std::move(preamble)),
      cycle_(std::move(cycle)),
      declared_split_(declared_split) {
  if (k1_ == 0) throw Error(ErrorCode::ChainMismatch, "k1 must be positive");
  if (cycle_.empty()) throw Error(ErrorCode::ChainMismatch, "tower needs at least one cycle descriptor");

  // Dimensional chaining over the preamble and two passes of the cycle;
  // later passes repeat the second.
  BigInt k = k1_;
  const std::size_t checked = preamble_.size() + 2 * cycle_.size();
  for (std::size_t n = 1; n <= checked; ++n) {
    const Descriptor& d = descriptor(n);
    if (const auto* p = std::get_if<PartitionStep>(&d); p && BigInt(p->diag.block_count()) != k) {
      throw Error(ErrorCode::ChainMismatch, "level " + std::to_string(n) + ": partition starts at T_" +
                                                std::to_string(p->diag.block_count()) +
                                                " but k_" + std::to_string(n) + " = " + k.str());
    }
    k *= ratio_of(d);
  }

  if (declared_split_) {
    if (BigInt(declared_split_->first) * declared_split_->second != BigInt(k1_)) {
      throw Error(ErrorCode::ChainMismatch,
                  "declared s_1 * t_1 = " + std::to_string(declared_split_->first) + " * " +
                      std::to_string(declared_split_->second) + " differs from k1 = " +
                      std::to_string(k1_));
    }
    initial_split_ = *declared_split_;
  } else if (auto first = tuhf::split_ratio(descriptor(1));
             first && BigInt(first->first) * first->second == BigInt(k1_)) {
    initial_split_ = *first;
  } else {
    bool all_standard = true;
    for (const auto* list : {&preamble_, &cycle_}) {
      for (const auto& d : *list) all_standard = all_standard && std::holds_alternative<StandardStep>(d);
    }
    initial_split_ = all_standard ? std::pair{k1_, std::uint64_t{1}} : std::pair{std::uint64_t{1}, k1_};
  }
}

const Descriptor& TowerSpec::descriptor(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "levels start at 1");
  if (n <= preamble_.size()) return preamble_[n - 1];
  return cycle_[(n - 1 - preamble_.size()) % cycle_.size()];
}

bool TowerSpec::is_alternating_form() const {
  for (const auto* list : {&preamble_, &cycle_}) {
    for (const auto& d : *list) {
      if (std::holds_alternative<PartitionStep>(d)) return false;
    }
  }
  return true;
}

BigInt TowerSpec::dim(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "levels start at 1");
  BigInt k = k1_;
  for (std::size_t m = 1; m < n; ++m) k *= ratio_of(descriptor(m));
  return k;
}

LevelDims TowerSpec::level_dims(std::size_t n) const {
  LevelDims out{dim(n), std::nullopt, std::nullopt};
  if (is_alternating_form()) {
    auto [S, T] = split_ratio(1, n);
    out.s = BigInt(initial_split_.first) * S;
    out.t = BigInt(initial_split_.second) * T;
  }
  return out;
}

void require_alternating(const TowerSpec& tower) {
  if (!tower.is_alternating_form()) {
    throw Error(ErrorCode::NotAlternatingTower, "tower uses a general partition descriptor");
  }
}

std::pair<BigInt, BigInt> TowerSpec::split_ratio(std::size_t from, std::size_t to) const {
  require_alternating(*this);
  if (from == 0 || to < from) throw Error(ErrorCode::OutOfRange, "bad level range");
  BigInt S = 1, T = 1;
  for (std::size_t m = from; m < to; ++m) {
    auto r = tuhf::split_ratio(descriptor(m));
    S *= r->first;
    T *= r->second;
  }
  return {S, T};
}

RegularEmbedding TowerSpec::embedding(std::size_t n) const {
  return realize(descriptor(n), to_size(dim(n)));
}

RegularEmbedding TowerSpec::composite(std::size_t from, std::size_t to) const {
  if (from == 0 || to < from) throw Error(ErrorCode::OutOfRange, "bad level range");
  const std::size_t k = to_size(dim(from));
  if (is_alternating_form()) {
    auto [S, T] = split_ratio(from, to);
    to_size(dim(to));
    return alternating(k, static_cast<std::size_t>(S), static_cast<std::size_t>(T));
  }
  RegularEmbedding acc = identity_embedding(k);
  for (std::size_t m = from; m < to; ++m) acc = compose_embeddings(embedding(m), acc);
  return acc;
}

TowerSpec load_tower(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> k1;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> split;
  std::vector<Descriptor> preamble, cycle;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    const std::string ctx = "line " + std::to_string(line_no);
    if (key == "k1") {
      if (k1) fail("k1 given twice");
      std::istringstream rs(rest);
      std::string tok, extra;
      if (!(rs >> tok) || (rs >> extra)) fail("expected 'k1 <int>'");
      k1 = parse_positive(tok, ErrorCode::ParseError, ctx);
    } else if (key == "split") {
      if (split) fail("split given twice");
      std::istringstream rs(rest);
      std::string a, b, extra;
      if (!(rs >> a >> b) || (rs >> extra)) fail("expected 'split <s1> <t1>'");
      split = std::pair{parse_positive(a, ErrorCode::ParseError, ctx),
                        parse_positive(b, ErrorCode::ParseError, ctx)};
    } else if (key == "preamble") {
      if (!cycle.empty()) fail("preamble after cycle");
      preamble.push_back(parse_descriptor(rest));
    } else if (key == "cycle") {
      cycle.push_back(parse_descriptor(rest));
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!k1) throw Error(ErrorCode::ParseError, "missing 'k1' line");
  if (cycle.empty()) throw Error(ErrorCode::ParseError, "missing 'cycle' line");
  return TowerSpec(*k1, std::move(preamble), std::move(cycle), split);
}

TowerSpec load_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_tower(buf.str());
}

std::string format_tower(const TowerSpec& tower) {
  std::ostringstream os;
  os << "k1 " << tower.k1() << '\n';
  if (tower.declared_split()) {
    os << "split " << tower.declared_split()->first << ' ' << tower.declared_split()->second << '\n';
  }
  for (const auto& d : tower.preamble()) os << "preamble " << format_descriptor(d) << '\n';
  for (const auto& d : tower.cycle()) os << "cycle " << format_descriptor(d) << '\n';
  return os.str();
}

std::pair<SupernaturalNumber, SupernaturalNumber> supernatural_pair(const TowerSpec& tower) {
  require_alternating(tower);
  SupernaturalNumber s, t, s_cycle, t_cycle;
  for (const auto& d : tower.preamble()) {
    auto r = split_ratio(d);
    s = multiply(s, SupernaturalNumber::from_integer(r->first));
    t = multiply(t, SupernaturalNumber::from_integer(r->second));
  }
  for (const auto& d : tower.cycle()) {
    auto r = split_ratio(d);
    s_cycle = multiply(s_cycle, SupernaturalNumber::from_integer(r->first));
    t_cycle = multiply(t_cycle, SupernaturalNumber::from_integer(r->second));
  }
  return {multiply(s, s_cycle.infinite_power()), multiply(t, t_cycle.infinite_power())};
}

TensorTower::TensorTower(TowerSpec phi, TowerSpec psi) : phi_(std::move(phi)), psi_(std::move(psi)) {}

BigInt TensorTower::dim(std::size_t n) const { return phi_.dim(n) * psi_.dim(n); }

RegularEmbedding TensorTower::embedding(std::size_t n) const {
  return tensor_embed(phi_.embedding(n), psi_.embedding(n));
}

RegularEmbedding TensorTower::composite(std::size_t from, std::size_t to) const {
  return tensor_embed(phi_.composite(from, to), psi_.composite(from, to));
}

}  // namespace tuhf
