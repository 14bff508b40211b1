// Batch command-line surface for the nested-sequent toolkit: proof search,
// proof checking, cut elimination, Lyndon interpolation, countermodel search,
// and grammar reachability queries.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "igl/interpolate.hpp"
#include "igl/json_io.hpp"
#include "igl/search.hpp"
#include "igl/semantics.hpp"
#include "igl/transform.hpp"

using namespace igl;

namespace {

// exit codes: 0 success, 1 negative result, 2 input error
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct CommonOpts {
  std::string axioms_path;
  int max_branch = 8;
  int max_prop = 2;
  int max_fresh = 8;
  bool pretty = false;
};

AxiomSet get_axioms(const CommonOpts& o) {
  if (o.axioms_path.empty()) return AxiomSet{};
  return load_axioms(o.axioms_path);
}

SearchBudget get_budget(const CommonOpts& o) {
  SearchBudget b;
  b.max_noninvertible = o.max_branch;
  b.max_propagations_per_pair = o.max_prop;
  b.max_new_components = o.max_fresh;
  return b;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--axioms", o.axioms_path, "axiom file (JSON)");
  cmd->add_option("--max-branch", o.max_branch, "bound on non-invertible rule applications");
  cmd->add_option("--max-prop", o.max_prop, "bound on propagations per (box, target) pair");
  cmd->add_option("--max-fresh", o.max_fresh, "bound on fresh components");
  cmd->add_flag("--pretty", o.pretty, "human-readable output");
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

Name name_from_text(const std::string& s) {
  if (s.size() < 2 || s[0] != 'w') throw std::runtime_error("bad component name '" + s + "'");
  return Name{static_cast<uint32_t>(std::stoul(s.substr(1)))};
}

Character character_from_text(const std::string& s) {
  if (!s.empty() && s.back() == '^') return Character{s.substr(0, s.size() - 1), true};
  return Character{s, false};
}

int run_prove(const CommonOpts& o, const std::string& goal, const std::string& sequent_text,
              bool compact) {
  AxiomSet ax = get_axioms(o);
  const Alphabet* alpha = ax.alphabet.empty() ? nullptr : &ax.alphabet;
  NestedSequent g;
  if (!sequent_text.empty()) {
    g = parse_sequent(sequent_text, alpha);
  } else {
    g.name = Name{0};
    g.seq.out = parse_formula(goal, alpha);
  }
  auto proof = prove(g, ax, get_budget(o));
  if (!proof) {
    std::cout << nlohmann::json{{"result", "NoProofWithinBudget"}}.dump(2) << "\n";
    std::cerr << nlohmann::json{{"reason", "no proof within budget"}}.dump() << "\n";
    return kNegative;
  }
  auto check = check_proof(*proof, ax);
  if (!check.ok) throw std::runtime_error("internal: search output failed the checker");
  if (o.pretty)
    std::cout << pretty_proof(*proof);
  else
    std::cout << proof_to_json(*proof, compact).dump(2) << "\n";
  return kOk;
}

int run_check(const CommonOpts& o, const std::string& path) {
  AxiomSet ax = get_axioms(o);
  Proof p = proof_from_json(load_json_file(path), ax);
  auto r = check_proof(p, ax);
  if (r.ok) {
    std::cout << nlohmann::json{{"result", "ok"}, {"conclusion", p.conclusion.str()}}.dump(2)
              << "\n";
    return kOk;
  }
  std::cout << nlohmann::json{{"result", "invalid"}}.dump(2) << "\n";
  std::cerr << nlohmann::json{{"path", r.error->path},
                              {"rule", r.error->rule},
                              {"reason", r.error->reason}}
                   .dump()
            << "\n";
  return kNegative;
}

int run_cutelim(const CommonOpts& o, const std::string& left_path, const std::string& right_path,
                const std::string& at, const std::string& formula, bool compact) {
  AxiomSet ax = get_axioms(o);
  const Alphabet* alpha = ax.alphabet.empty() ? nullptr : &ax.alphabet;
  Proof left = proof_from_json(load_json_file(left_path), ax);
  Proof right = proof_from_json(load_json_file(right_path), ax);
  Formula f = parse_formula(formula, alpha);
  Proof out = eliminate_cut(left, right, name_from_text(at), f, ax);
  auto check = check_proof(out, ax);
  if (!check.ok) throw std::runtime_error("internal: cut elimination output failed the checker");
  if (o.pretty)
    std::cout << pretty_proof(out);
  else
    std::cout << proof_to_json(out, compact).dump(2) << "\n";
  return kOk;
}

int run_interpolate(const CommonOpts& o, const std::string& formula, const std::string& mode,
                    bool simplify) {
  AxiomSet ax = get_axioms(o);
  const Alphabet* alpha = ax.alphabet.empty() ? nullptr : &ax.alphabet;
  Formula f = parse_formula(formula, alpha);
  if (f.kind() != Conn::Imp || f.is_top())
    throw std::runtime_error("interpolate expects an implication A -> B");
  auto proof = prove_formula(f, ax, get_budget(o));
  if (!proof) {
    std::cout << nlohmann::json{{"result", "NoProofWithinBudget"}}.dump(2) << "\n";
    std::cerr << nlohmann::json{{"reason", "the implication was not proved within budget"}}.dump()
              << "\n";
    return kNegative;
  }
  auto res = lyndon_interpolant(*proof, ax,
                                mode == "join" ? InterpolantMode::Join : InterpolantMode::Meet);
  if (!check_proof(res.proof_a_to_i, ax).ok || !check_proof(res.proof_i_to_b, ax).ok)
    throw std::runtime_error("internal: side proofs failed the checker");
  Formula out_formula = simplify ? simplify_interpolant(res.interpolant) : res.interpolant;
  nlohmann::json j;
  j["interpolant"] = out_formula.str();
  j["proof_A_to_I"] = proof_to_json(res.proof_a_to_i);
  j["proof_I_to_B"] = proof_to_json(res.proof_i_to_b);
  j["signature_check"] = res.signature_ok ? "pass" : "fail";
  std::cout << j.dump(2) << "\n";
  return res.signature_ok ? kOk : kNegative;
}

int run_countermodel(const CommonOpts& o, const std::string& formula, int max_worlds) {
  AxiomSet ax = get_axioms(o);
  const Alphabet* alpha = ax.alphabet.empty() ? nullptr : &ax.alphabet;
  Formula f = parse_formula(formula, alpha);
  auto cm = find_countermodel(f, ax, max_worlds);
  if (!cm) {
    std::cout << nlohmann::json{{"result", "none"}}.dump(2) << "\n";
    std::cerr << nlohmann::json{{"reason", "no countermodel up to " + std::to_string(max_worlds) +
                                               " worlds"}}
                     .dump()
              << "\n";
    return kNegative;
  }
  nlohmann::json j = model_to_json(cm->model);
  j["refuting_world"] = cm->world;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int run_grammar_reach(const CommonOpts& o, const std::string& sequent_text,
                      const std::string& from, const std::string& character) {
  AxiomSet ax = get_axioms(o);
  Grammar g = build_grammar(ax);
  nlohmann::json j;
  nlohmann::json prods = nlohmann::json::array();
  for (const auto& p : g.productions()) {
    nlohmann::json rhs = nlohmann::json::array();
    for (const auto& c : p.rhs) rhs.push_back(c.str());
    prods.push_back({{"lhs", p.lhs.str()}, {"rhs", rhs}});
  }
  j["productions"] = prods;
  if (!sequent_text.empty()) {
    const Alphabet* alpha = ax.alphabet.empty() ? nullptr : &ax.alphabet;
    NestedSequent s = parse_sequent(sequent_text, alpha);
    PropagationGraph pg = propagation_graph(s);
    if (from.empty() || character.empty())
      throw std::runtime_error("--sequent needs --from and --char");
    auto result = reach(g, pg, name_from_text(from), character_from_text(character));
    nlohmann::json r = nlohmann::json::array();
    for (const auto& n : result) r.push_back(n.str());
    j["reach"] = r;
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nested-sequent proof toolkit for intuitionistic grammar logics"};
  app.require_subcommand(1);

  CommonOpts prove_opts, check_opts, cut_opts, interp_opts, cm_opts, gr_opts;
  std::string prove_goal, prove_sequent, check_path;
  std::string cut_left, cut_right, cut_at, cut_formula;
  std::string interp_goal, interp_mode = "meet";
  bool interp_simplify = false;
  std::string cm_goal;
  int cm_max_worlds = 3;
  std::string gr_sequent, gr_from, gr_char;
  bool compact = false;

  auto* cmd_prove = app.add_subcommand("prove", "search for a proof of a formula or sequent");
  add_common(cmd_prove, prove_opts);
  cmd_prove->add_option("formula", prove_goal, "goal formula");
  cmd_prove->add_option("--sequent", prove_sequent, "goal sequent text");
  cmd_prove->add_flag("--compact", compact, "emit only the root conclusion");

  auto* cmd_check = app.add_subcommand("check", "verify a proof file");
  add_common(cmd_check, check_opts);
  cmd_check->add_option("proof", check_path, "proof JSON file")->required();

  auto* cmd_cut = app.add_subcommand("cutelim", "eliminate a cut between two proofs");
  add_common(cmd_cut, cut_opts);
  cmd_cut->add_option("--left", cut_left, "proof of strip(C) > w (0 => A)")->required();
  cmd_cut->add_option("--right", cut_right, "proof of C > w (A => 0)")->required();
  cmd_cut->add_option("--at", cut_at, "cut component name")->required();
  cmd_cut->add_option("--formula", cut_formula, "cut formula")->required();

  auto* cmd_interp = app.add_subcommand("interpolate", "compute a Lyndon interpolant");
  add_common(cmd_interp, interp_opts);
  cmd_interp->add_option("formula", interp_goal, "implication A -> B")->required();
  cmd_interp->add_option("--mode", interp_mode, "join | meet")
      ->check(CLI::IsMember({"join", "meet"}));
  cmd_interp->add_flag("--simplify", interp_simplify, "collapse top/bottom units");

  auto* cmd_cm = app.add_subcommand("countermodel", "search for a finite countermodel");
  add_common(cmd_cm, cm_opts);
  cmd_cm->add_option("formula", cm_goal, "formula to refute")->required();
  cmd_cm->add_option("--max-worlds", cm_max_worlds, "world cap (at most 4)");

  auto* cmd_gr = app.add_subcommand("grammar-reach", "dump the grammar and answer reachability");
  add_common(cmd_gr, gr_opts);
  cmd_gr->add_option("--sequent", gr_sequent, "sequent text");
  cmd_gr->add_option("--from", gr_from, "source component");
  cmd_gr->add_option("--char", gr_char, "character of the query language");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_prove->parsed()) return run_prove(prove_opts, prove_goal, prove_sequent, compact);
    if (cmd_check->parsed()) return run_check(check_opts, check_path);
    if (cmd_cut->parsed())
      return run_cutelim(cut_opts, cut_left, cut_right, cut_at, cut_formula, compact);
    if (cmd_interp->parsed())
      return run_interpolate(interp_opts, interp_goal, interp_mode, interp_simplify);
    if (cmd_cm->parsed()) return run_countermodel(cm_opts, cm_goal, cm_max_worlds);
    if (cmd_gr->parsed()) return run_grammar_reach(gr_opts, gr_sequent, gr_from, gr_char);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return kInputError;
  }
  return kInputError;
}
