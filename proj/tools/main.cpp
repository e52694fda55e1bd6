#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "wtree/serialize.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 ok (or a clean negative verdict), 1 semantic failure,
// 2 unreadable input, 3 enumeration over the configured limit.
constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kParse = 2;
constexpr int kLimit = 3;

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wtree::ParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw wtree::ParseError(e.what());
  }
}

wtree::SetoidFamily load_family(const std::string& path) {
  return wtree::family_from_json(read_json(path));
}

// Commands that interpret trees insist on a lawful signature first; the
// validate command is the one place violations are data, not errors.
wtree::SetoidFamily load_valid_family(const std::string& path) {
  wtree::SetoidFamily f = load_family(path);
  if (!wtree::validate_family(f).empty()) {
    throw wtree::SemanticError("signature at '" + path +
                               "' does not satisfy the family laws");
  }
  return f;
}

int run_validate(const std::string& sig_path) {
  wtree::SetoidFamily f = load_family(sig_path);
  wtree::Report report = wtree::validate_family(f);
  for (const auto& v : report) emit(wtree::violation_to_json(v));
  emit(json{{"valid", report.empty()}, {"violations", report.size()}});
  return report.empty() ? kOk : kSemantic;
}

int run_eq(const std::string& sig_path, const std::string& t1_path,
           const std::string& t2_path) {
  wtree::SetoidFamily f = load_valid_family(sig_path);
  wtree::Tree w1 = wtree::tree_from_json(f, read_json(t1_path));
  wtree::Tree w2 = wtree::tree_from_json(f, read_json(t2_path));
  emit(json{{"per", wtree::per(f, w1, w2)}});
  return kOk;
}

int run_check_ext(const std::string& sig_path, const std::string& t_path) {
  wtree::SetoidFamily f = load_valid_family(sig_path);
  wtree::Tree w = wtree::tree_from_json(f, read_json(t_path));
  emit(json{{"extensional", wtree::is_extensional(f, w)}});
  return kOk;
}

int run_fold(const std::string& sig_path, const std::string& alg_path,
             const std::string& t_path) {
  wtree::SetoidFamily f = load_valid_family(sig_path);
  wtree::Algebra alg = wtree::algebra_from_json(f, read_json(alg_path));
  if (!wtree::validate_algebra(f, alg).empty()) {
    throw wtree::SemanticError("structure map at '" + alg_path +
                               "' is not extensional");
  }
  wtree::Tree w = wtree::tree_from_json(f, read_json(t_path));
  wtree::Val v = wtree::fold(f, alg, w);
  if (alg.is_builtin()) {
    emit(json{{"value", v}});
  } else {
    emit(json{{"value", alg.target().id_of(v)}});
  }
  return kOk;
}

int run_enumerate(const std::string& sig_path, int depth, std::size_t limit) {
  wtree::SetoidFamily f = load_valid_family(sig_path);
  wtree::TruncatedWSetoid trunc = wtree::enumerate_extensional(f, depth, limit);
  json trees = json::array();
  for (const auto& w : trunc.trees) trees.push_back(wtree::display_key(f, w));
  emit(json{{"count", trunc.trees.size()}, {"trees", trees}});
  return kOk;
}

int run_witness(const std::string& sig_path, const std::string& t1_path,
                const std::string& t2_path) {
  wtree::SetoidFamily f = load_valid_family(sig_path);
  wtree::Tree w1 = wtree::tree_from_json(f, read_json(t1_path));
  wtree::Tree w2 = wtree::tree_from_json(f, read_json(t2_path));
  auto witness = wtree::per_witness(f, w1, w2);
  if (witness) {
    emit(wtree::witness_to_json(f, *witness));
  } else {
    emit(json{{"witness", nullptr}});
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite well-founded trees over setoid families"};
  app.require_subcommand(1);

  int depth = 4;
  std::size_t limit = wtree::kDefaultTreeLimit;
  std::string format = "json";
  app.add_option("--depth", depth, "Depth bound for enumeration")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--limit", limit, "Cap on enumerated trees");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json"}));

  std::string sig_path, alg_path, t1_path, t2_path;

  CLI::App* validate = app.add_subcommand(
      "validate", "Check the setoid, family, and transport laws");
  validate->add_option("signature", sig_path)->required();

  CLI::App* eq = app.add_subcommand(
      "eq", "Decide the partial equivalence between two trees");
  eq->add_option("signature", sig_path)->required();
  eq->add_option("tree1", t1_path)->required();
  eq->add_option("tree2", t2_path)->required();

  CLI::App* check_ext = app.add_subcommand(
      "check-ext", "Decide whether a tree is related to itself");
  check_ext->add_option("signature", sig_path)->required();
  check_ext->add_option("tree", t1_path)->required();

  CLI::App* fold = app.add_subcommand(
      "fold", "Evaluate the structural recursion at a tree");
  fold->add_option("signature", sig_path)->required();
  fold->add_option("algebra", alg_path)->required();
  fold->add_option("tree", t1_path)->required();

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "List extensional trees up to the depth bound");
  enumerate->add_option("signature", sig_path)->required();

  CLI::App* witness = app.add_subcommand(
      "witness", "Produce an equality witness tree, if one exists");
  witness->add_option("signature", sig_path)->required();
  witness->add_option("tree1", t1_path)->required();
  witness->add_option("tree2", t2_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(json{{"error", e.what()}, {"kind", "parse"}});
    return kParse;
  }

  try {
    if (*validate) return run_validate(sig_path);
    if (*eq) return run_eq(sig_path, t1_path, t2_path);
    if (*check_ext) return run_check_ext(sig_path, t1_path);
    if (*fold) return run_fold(sig_path, alg_path, t1_path);
    if (*enumerate) return run_enumerate(sig_path, depth, limit);
    if (*witness) return run_witness(sig_path, t1_path, t2_path);
  } catch (const wtree::ParseError& e) {
    emit(json{{"error", e.what()}, {"kind", "parse"}});
    return kParse;
  } catch (const wtree::LimitError& e) {
    emit(json{{"error", e.what()}, {"kind", "limit"}});
    return kLimit;
  } catch (const std::exception& e) {
    emit(json{{"error", e.what()}, {"kind", "semantic"}});
    return kSemantic;
  }
  return kOk;
}
