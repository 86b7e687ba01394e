// tuhf: command-line front end for triangular UHF tower computations.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tuhf/automorphism.hpp"
#include "tuhf/gelfand.hpp"
#include "tuhf/matrix.hpp"
#include "tuhf/properties.hpp"

namespace {

using namespace tuhf;

std::pair<std::size_t, std::size_t> parse_level_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedToken, "level range '" + text + "' is not of the form a..b");
  }
}

// Either a partition serialization or "<descriptor>:<k>".
RegularEmbedding parse_embedding(const std::string& text) {
  if (text.rfind("m=", 0) == 0) return RegularEmbedding(OrderedPartition::parse(text));
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::MalformedToken, "embedding '" + text + "' needs a partition or '<descriptor>:<k>'");
  }
  std::size_t k = 0;
  try {
    k = std::stoul(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedToken, "bad level size in '" + text + "'");
  }
  return realize(parse_descriptor(text.substr(0, colon)), k);
}

std::string format_phase(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << ',' << z.imag();
  return os.str();
}

void show_tower(const std::string& file, std::size_t levels) {
  const TowerSpec tower = load_tower_file(file);
  std::cout << "k1 " << tower.k1() << '\n';
  for (std::size_t n = 1; n <= levels; ++n) {
    const LevelDims d = tower.level_dims(n);
    std::cout << "level " << n << " k " << d.k;
    if (d.s) std::cout << " s " << *d.s << " t " << *d.t;
    std::cout << '\n';
  }
  if (tower.is_alternating_form()) {
    auto [s, t] = supernatural_pair(tower);
    std::cout << "s_phi " << s.to_string() << '\n' << "t_phi " << t.to_string() << '\n';
  } else {
    std::cout << "s_phi n/a\nt_phi n/a\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangular UHF towers: embeddings, automorphisms and invariants"};
  app.require_subcommand(1);

  std::string file, file_b, auto_file, matrix_file, levels_text = "1..1", x_text, y_text, lhs, rhs;
  std::uint64_t prime = 0, seed = 1;
  std::size_t show_levels = 4, cases = 50;
  bool normalize = false;

  auto* tower_cmd = app.add_subcommand("tower", "Tower inspection");
  tower_cmd->require_subcommand(1);
  auto* show_cmd = tower_cmd->add_subcommand("show", "Level dimensions and the supernatural pair");
  show_cmd->add_option("file", file, "Tower file")->required();
  show_cmd->add_option("--levels", show_levels, "Number of levels to print");

  auto* rank_cmd = app.add_subcommand("out-rank", "Rank of the outer automorphism group");
  rank_cmd->add_option("file", file, "Tower file")->required();

  auto* iso_cmd = app.add_subcommand("iso", "Isomorphism test for alternating towers");
  iso_cmd->add_option("a", file, "First tower file")->required();
  iso_cmd->add_option("b", file_b, "Second tower file")->required();

  auto* factor_cmd = app.add_subcommand("factor", "Factor an automorphism into a shift word");
  factor_cmd->add_option("file", file, "Tower file")->required();
  factor_cmd->add_option("--auto", auto_file, "Automorphism data file")->required();

  auto* shift_cmd = app.add_subcommand("shift", "Materialize the shift automorphism theta_p");
  shift_cmd->add_option("file", file, "Tower file")->required();
  shift_cmd->add_option("-p", prime, "Prime")->required();
  shift_cmd->add_option("--levels", levels_text, "Level range a..b");
  shift_cmd->add_flag("--normalize", normalize, "Group levels so p divides every ratio first");

  auto* embed_cmd = app.add_subcommand("embed", "Embedding calculus");
  embed_cmd->require_subcommand(1);
  auto* compose_cmd = embed_cmd->add_subcommand("compose", "outer o inner");
  auto* compare_cmd = embed_cmd->add_subcommand("compare", "Order of two embeddings");
  auto* tensor_cmd = embed_cmd->add_subcommand("tensor", "Tensor product of two embeddings");
  for (auto* sub : {compose_cmd, compare_cmd, tensor_cmd}) {
    sub->add_option("first", lhs, "Partition or <descriptor>:<k>")->required();
    sub->add_option("second", rhs, "Partition or <descriptor>:<k>")->required();
  }

  auto* gelfand_cmd = app.add_subcommand("gelfand", "Order on the Gelfand space");
  gelfand_cmd->require_subcommand(1);
  auto* cmp_cmd = gelfand_cmd->add_subcommand("cmp", "Compare two points under both conditions");
  cmp_cmd->add_option("file", file, "Tower file")->required();
  cmp_cmd->add_option("--x", x_text, "Coordinates x1,x2,...[@tail]")->required();
  cmp_cmd->add_option("--y", y_text, "Coordinates y1,y2,...[@tail]")->required();

  auto* normalizer_cmd = app.add_subcommand("normalizer", "Normalizer decomposition");
  normalizer_cmd->require_subcommand(1);
  auto* split_cmd = normalizer_cmd->add_subcommand("split", "Split V = D W");
  split_cmd->add_option("--matrix", matrix_file, "Matrix file")->required();

  auto* check_cmd = app.add_subcommand("check", "Property suites");
  check_cmd->require_subcommand(1);
  auto* all_cmd = check_cmd->add_subcommand("all", "Run every suite on a tower");
  all_cmd->add_option("file", file, "Tower file")->required();
  all_cmd->add_option("--seed", seed, "Random seed");
  all_cmd->add_option("--cases", cases, "Cases per randomized suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*show_cmd) {
      show_tower(file, show_levels);
    } else if (*rank_cmd) {
      std::cout << out_rank(load_tower_file(file)) << '\n';
    } else if (*iso_cmd) {
      const auto r = alternating_iso(load_tower_file(file), load_tower_file(file_b));
      if (r) {
        std::cout << "isomorphic, r = " << r->to_string() << '\n';
      } else {
        std::cout << "not isomorphic\n";
      }
    } else if (*factor_cmd) {
      std::cout << factor_automorphism(load_tower_file(file), load_auto_data_file(auto_file)).to_string();
    } else if (*shift_cmd) {
      TowerSpec tower = load_tower_file(file);
      if (normalize) tower = normalize_for_primes(tower);
      auto [a, b] = parse_level_range(levels_text);
      std::cout << format_auto_data(shift_auto_levels(tower, prime, a, b));
    } else if (*compose_cmd) {
      std::cout << compose_embeddings(parse_embedding(lhs), parse_embedding(rhs)).diag().to_string() << '\n';
    } else if (*compare_cmd) {
      std::cout << to_string(compare_embeddings(parse_embedding(lhs), parse_embedding(rhs))) << '\n';
    } else if (*tensor_cmd) {
      std::cout << tensor_embed(parse_embedding(lhs), parse_embedding(rhs)).diag().to_string() << '\n';
    } else if (*cmp_cmd) {
      const TowerSpec tower = load_tower_file(file);
      const GelfandPoint x = GelfandPoint::parse(x_text), y = GelfandPoint::parse(y_text);
      std::cout << "lexicographic " << to_string(gelfand_compare(tower, x, y)) << '\n';
      std::cout << "projections " << to_string(gelfand_compare_via_projections(tower, x, y)) << '\n';
      if (auto rel = relation_member(tower, x, y, x.coords.size())) {
        std::cout << "relation n " << rel->n << " i " << rel->i << " j " << rel->j << '\n';
      } else {
        std::cout << "relation none\n";
      }
    } else if (*split_cmd) {
      std::ifstream in(matrix_file);
      if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + matrix_file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      const NormalizerSplit s = normalizer_split(UpperTriangular(ComplexMatrix::parse(buf.str())));
      std::cout << "phases";
      for (const Complex& z : s.d.phases()) std::cout << ' ' << format_phase(z);
      std::cout << "\nsupport";
      for (std::size_t c = 0; c < s.w.dim(); ++c) {
        if (auto r = s.w.row_of(c)) std::cout << " (" << *r + 1 << ',' << c + 1 << ')';
      }
      std::cout << '\n';
    } else if (*all_cmd) {
      bool ok = true;
      for (const auto& outcome : run_property_suites(load_tower_file(file), seed, cases)) {
        std::cout << outcome.to_string() << '\n';
        ok = ok && outcome.passed();
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_parse_error(e.code()) ? 2 : 1;
  }
  return 0;
}
