#include "opstrict/commands.hpp"

#include <chrono>
#include <filesystem>
#include <map>

#include "opstrict/io.hpp"
#include "opstrict/strictify.hpp"
#include "opstrict/theory.hpp"
#include "opstrict/tree.hpp"

namespace opstrict {

namespace {

namespace fs = std::filesystem;

std::string cap_scope(const WeakPCategory& W, const RunConfig& c, bool trees) {
  std::string s = "arity <= " + std::to_string(W.operad().arity_cap());
  if (trees) s += ", trees of size <= " + std::to_string(c.tree_size_cap);
  return s;
}

WeakPtr load_wpc(Report& report, const std::string& path, const RunConfig& config) {
  auto text = read_file(path);
  report.add_input(path, text);
  auto W = parse_wpc(text, file_operad_loader(fs::path(path).parent_path()));
  if (W->operad().arity_cap() > config.arity_cap)
    throw CapExceeded(path + ": operad arity cap " + std::to_string(W->operad().arity_cap()) +
                      " exceeds --arity-cap " + std::to_string(config.arity_cap));
  return W;
}

template <class Body>
CommandResult run(std::string command, const RunConfig& config, Body body) {
  CommandResult result;
  result.report.command = std::move(command);
  result.report.config = config;
  auto start = std::chrono::steady_clock::now();
  try {
    config.validate();
    body(result);
  } catch (const std::exception& e) {
    result.report.record(e);
    result.artifact.reset();
  }
  if (config.timing)
    result.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ordered_json names_by_arity(const TabulatedOperad& P) {
  ordered_json j = ordered_json::object();
  for (std::size_t n = 0; n <= P.arity_cap(); ++n) {
    ordered_json names = ordered_json::array();
    for (auto p : P.of_arity(n)) names.push_back(P.name(p));
    j["P(" + std::to_string(n) + ")"] = names;
  }
  return j;
}

void add_coherence(Report& report, const WeakPCategory& W, const RunConfig& config) {
  auto coh = validate_weak_p_category(W, config.tree_size_cap);
  auto& item = report.add("validate_weak_p_category");
  item.checks = coh.checks;
  item.cap_limited = true;
  item.scope = cap_scope(W, config, true);
  item.details["objects"] = W.category().object_count();
  item.details["morphisms"] = W.category().morphism_count();
  item.details["trees"] = coh.trees;
  item.details["edges"] = coh.edges;
  item.details["strict"] = check_strict_action(W).passed();
  if (!coh.suspects.empty()) item.details["suspects"] = coh.suspects;
}

}  // namespace

CommandResult cmd_compile_theory(const std::string& theory_path, const RunConfig& config) {
  return run("compile-theory", config, [&](CommandResult& result) {
    auto& report = result.report;
    auto text = read_file(theory_path);
    report.add_input(theory_path, text);
    auto presentation = parse_presentation(text);

    auto regularity = check_strong_regularity(presentation);
    auto& reg = report.add("check_strong_regularity");
    reg.checks.instances = presentation.equations.size();
    for (const auto& [index, violation] : regularity.violations) {
      const auto& eq = presentation.equations.at(index);
      reg.checks.fail("check_strong_regularity",
                      "equation " + std::to_string(index + 1) + " (line " +
                          std::to_string(eq.line) + "): " + to_string(eq.lhs) + " = " +
                          to_string(eq.rhs),
                      "same variables in the same order, each once", to_string(violation));
    }
    reg.details["theory"] = presentation.name;
    reg.details["regular"] = regularity.regular;
    if (!regularity.regular) return;

    auto compiled = compile_operad(presentation, config.arity_cap, config.term_size_cap);
    const auto& cr = compiled.report;
    auto& item = report.add("compile_operad");
    item.checks = cr.laws;
    item.cap_limited = cr.cap_limited;
    item.scope = "arity <= " + std::to_string(config.arity_cap) + ", terms of size <= " +
                 std::to_string(config.term_size_cap);
    item.details["elements"] = names_by_arity(compiled.operad);
    item.details["universe_size"] = cr.universe_size;
    item.details["merges"] = cr.merges;
    item.details["blocked_instances"] = cr.blocked_instances;
    item.details["blocked_contexts"] = cr.blocked_contexts;
    item.details["requested_arity_cap"] = cr.requested_arity_cap;
    item.details["effective_arity_cap"] = cr.effective_arity_cap;
    item.details["representatives"] = cr.representatives;
    result.artifact = print_operad(compiled.operad);
  });
}

CommandResult cmd_validate(const std::string& wpc_path, const RunConfig& config) {
  return run("validate", config, [&](CommandResult& result) {
    auto W = load_wpc(result.report, wpc_path, config);
    add_coherence(result.report, *W, config);
  });
}

CommandResult cmd_strictify(const std::string& wpc_path, const RunConfig& config) {
  return run("strictify", config, [&](CommandResult& result) {
    auto& report = result.report;
    auto W = load_wpc(report, wpc_path, config);
    add_coherence(report, *W, config);
    if (!report.passed()) return;

    auto S = strictify(W);
    auto& st = report.add("strictify");
    st.checks.instances = S->category().object_count();
    st.scope = cap_scope(*W, config, false);
    st.cap_limited = true;
    st.details["objects"] = S->category().object_count();
    st.details["morphisms"] = S->category().morphism_count();

    auto& strict = report.add("check_strict");
    strict.checks = check_strict(*S);
    strict.scope = st.scope;
    strict.cap_limited = true;

    auto F = build_F(S);
    auto& bf = report.add("build_F");
    bf.checks = validate_weak_p_functor(F);
    bf.scope = st.scope;
    bf.cap_limited = true;

    auto eq = check_equivalence(S, F);
    auto& ce = report.add("check_equivalence");
    ce.checks = eq.report;
    ce.scope = st.scope;
    ce.cap_limited = true;
    ce.details["transported"] = eq.transport.has_value();

    result.artifact = print_wpc(*S->strict());
  });
}

CommandResult cmd_factorize(const std::string& source_wpc, const std::string& target_wpc,
                            const std::string& functor_wfun, const RunConfig& config) {
  return run("factorize", config, [&](CommandResult& result) {
    auto& report = result.report;
    auto A = load_wpc(report, source_wpc, config);
    auto B = load_wpc(report, target_wpc, config);
    if (!(A->operad() == B->operad()))
      throw ShapeMismatch("source and target are over different operads");
    auto gtext = read_file(functor_wfun);
    report.add_input(functor_wfun, gtext);
    auto G = parse_wfun(gtext, A, B);

    auto& vg = report.add("validate_weak_p_functor");
    vg.checks = validate_weak_p_functor(G);
    vg.scope = cap_scope(*A, config, false);
    vg.cap_limited = true;

    auto S = strictify(A);
    auto unit = build_unit(S);
    auto& bu = report.add("build_unit");
    bu.checks = validate_weak_p_functor(unit);
    bu.scope = vg.scope;
    bu.cap_limited = true;
    if (!report.passed()) return;

    auto fr = factorize(S, B, G, config.uniqueness_bound);
    auto& item = report.add("factorize");
    item.checks = fr.report;
    item.scope = vg.scope + ", uniqueness search <= " + std::to_string(config.uniqueness_bound) +
                 " evaluations";
    item.cap_limited = true;
    item.details["uniqueness_checked"] = fr.uniqueness_checked;
    item.details["bound_exceeded"] = fr.bound_exceeded;
    item.details["solutions"] = fr.solutions;
    item.details["evaluations"] = fr.evaluations;
  });
}

CommandResult cmd_enumerate(const std::string& operad_path, std::size_t arity,
                            const RunConfig& config) {
  return run("enumerate", config, [&](CommandResult& result) {
    auto& report = result.report;
    auto text = read_file(operad_path);
    report.add_input(operad_path, text);
    auto P = parse_operad(text);
    if (P.arity_cap() > config.arity_cap)
      throw CapExceeded(operad_path + ": operad arity cap " + std::to_string(P.arity_cap()) +
                        " exceeds --arity-cap " + std::to_string(config.arity_cap));
    if (arity > P.arity_cap())
      throw CapExceeded("arity " + std::to_string(arity) + " exceeds the operad's cap " +
                        std::to_string(P.arity_cap()));

    auto trees = enumerate_trees(P, arity, config.tree_size_cap);
    auto& en = report.add("enumerate_trees");
    en.checks.instances = trees.size();
    en.cap_limited = true;
    en.scope = "arity " + std::to_string(arity) + ", trees of size <= " +
               std::to_string(config.tree_size_cap);
    en.details["count"] = trees.size();

    // Partition by has_two_cell, and check that it is an equivalence.
    auto& tc = report.add("has_two_cell");
    tc.scope = en.scope;
    tc.cap_limited = true;
    std::vector<std::size_t> cls(trees.size());
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      std::size_t k = 0;
      while (k < reps.size() && !has_two_cell(P, trees[reps[k]], trees[i])) ++k;
      if (k == reps.size()) reps.push_back(i);
      cls[i] = k;
    }
    for (std::size_t i = 0; i < trees.size(); ++i)
      for (std::size_t j = 0; j < trees.size(); ++j) {
        ++tc.checks.instances;
        if (has_two_cell(P, trees[i], trees[j]) != (cls[i] == cls[j]))
          tc.checks.fail("has_two_cell.equivalence",
                         to_string(P, trees[i]) + " , " + to_string(P, trees[j]));
      }
    ordered_json classes = ordered_json::array();
    std::string listing;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      ordered_json members = ordered_json::array();
      for (std::size_t i = 0; i < trees.size(); ++i)
        if (cls[i] == k) members.push_back(to_string(P, trees[i]));
      auto value = P.name(eval_tree(P, trees[reps[k]]));
      classes.push_back({{"value", value}, {"size", members.size()}, {"trees", members}});
      listing += "class " + value + "\n";
      for (const auto& m : members) listing += "  " + m.get<std::string>() + "\n";
    }
    tc.details["classes"] = classes.size();
    tc.details["partition"] = classes;
    result.artifact = listing;
  });
}

}  // namespace opstrict
