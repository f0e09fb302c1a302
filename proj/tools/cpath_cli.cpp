// cpath: command-line front end for the path-term rewriting engine.
//
// Exit codes: 0 success (and "true" for equal), 1 negative result or failed
// check, 2 malformed input (syntax, arity, surface validation), 3 step
// limit exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpath/confluence.hpp"
#include "cpath/ordering.hpp"
#include "cpath/pi1.hpp"
#include "cpath/term.hpp"
#include "cpath/trs.hpp"

namespace {

using nlohmann::json;

const cpath::RuleSet& rule_set(const std::string& name) {
  if (name == "core") return cpath::RuleSet::core();
  if (name == "mixed") return cpath::RuleSet::mixed();
  if (name == "group") return cpath::RuleSet::group();
  return cpath::RuleSet::all();
}

cpath::Strategy strategy(const std::string& name) {
  if (name == "innermost") return cpath::Strategy::InnermostLeftmost;
  if (name == "random") return cpath::Strategy::SeededRandom;
  return cpath::Strategy::OutermostLeftmost;
}

json step_record(const cpath::RewriteStep& step, std::size_t k) {
  return json{{"after", cpath::print(step.after)},
              {"before", cpath::print(step.before)},
              {"pos", cpath::print_position(step.pos)},
              {"rule", cpath::step_rule_label(step)},
              {"step", k}};
}

void emit_steps(const cpath::RewriteTrace& trace, bool structured) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (structured) {
      std::cout << step_record(trace.steps[i], i + 1).dump() << "\n";
    } else {
      std::cout << cpath::print_step(trace.steps[i], i + 1) << "\n";
    }
  }
}

struct NormalizeArgs {
  std::string term;
  std::string file;
  std::string strategy = "outermost";
  std::string rules = "all";
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t step_limit = 10000;
  bool trace = false;
};

cpath::NormalizeOptions make_options(const NormalizeArgs& a) {
  cpath::NormalizeOptions opts;
  opts.strategy = strategy(a.strategy);
  opts.seed = a.seed;
  opts.step_limit = a.step_limit;
  opts.rules = &rule_set(a.rules);
  return opts;
}

int run_normalize(const NormalizeArgs& a) {
  std::vector<std::string> inputs;
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw cpath::Error("cannot open file " + a.file);
    std::string line;
    while (std::getline(in, line)) inputs.push_back(line);
  } else {
    inputs.push_back(a.term);
  }
  cpath::NormalizeOptions opts = make_options(a);
  bool structured = a.format == "structured";
  for (const std::string& text : inputs) {
    cpath::TermPtr t = cpath::parse(text);
    cpath::RewriteTrace trace = cpath::normalize(t, opts);
    if (a.trace) emit_steps(trace, structured);
    if (structured) {
      std::cout << json{{"normal_form", cpath::print(trace.result)},
                        {"term", cpath::print(t)}}
                       .dump()
                << "\n";
    } else {
      std::cout << cpath::print(trace.result) << "\n";
    }
  }
  return 0;
}

int run_equal(const NormalizeArgs& a, const std::string& left,
              const std::string& right) {
  cpath::TermPtr lhs = cpath::parse(left);
  cpath::TermPtr rhs = cpath::parse(right);
  cpath::RwEqualResult res = cpath::rw_equal(lhs, rhs, make_options(a));
  if (a.format == "structured") {
    std::cout << json{{"equal", res.equal},
                      {"left_normal_form", cpath::print(res.left.result)},
                      {"right_normal_form", cpath::print(res.right.result)}}
                     .dump()
              << "\n";
  } else {
    std::cout << (res.equal ? "true" : "false") << "\n";
  }
  return res.equal ? 0 : 1;
}

int run_trace(const NormalizeArgs& a) {
  cpath::TermPtr t = cpath::parse(a.term);
  cpath::RewriteTrace trace = cpath::normalize(t, make_options(a));
  bool structured = a.format == "structured";
  if (structured) {
    std::cout << json{{"initial", cpath::print(trace.initial)}}.dump() << "\n";
    emit_steps(trace, true);
    std::cout << json{{"normal_form", cpath::print(trace.result)}}.dump()
              << "\n";
  } else {
    std::cout << "initial: " << cpath::print(trace.initial) << "\n";
    emit_steps(trace, false);
    std::cout << "normal form: " << cpath::print(trace.result) << "\n";
  }
  return 0;
}

int run_rpo_check(const std::string& rules_name, const std::string& prec_name,
                  const std::string& status_name, const std::string& format) {
  const cpath::RuleSet& rules = rule_set(rules_name);
  const cpath::PrecedenceTable& prec = prec_name == "minimal"
                                           ? cpath::PrecedenceTable::minimal()
                                           : cpath::PrecedenceTable::standard();
  cpath::StatusMap status = status_name == "multiset"
                                ? cpath::all_multiset_status()
                                : cpath::default_status();
  std::vector<cpath::OrientationResult> results =
      cpath::check_rule_orientation(rules, prec, status);
  std::size_t oriented = 0;
  for (const auto& r : results) {
    if (r.oriented) ++oriented;
    if (format == "structured") {
      std::cout << json{{"detail", r.detail},
                        {"index", r.index},
                        {"name", r.name},
                        {"oriented", r.oriented}}
                       .dump()
                << "\n";
    } else {
      std::cout << "rule " << r.index << " " << r.name << ": "
                << (r.oriented ? "oriented" : "not-oriented") << " -- "
                << r.detail << "\n";
    }
  }
  std::size_t failed = results.size() - oriented;
  if (format == "structured") {
    std::cout << json{{"not_oriented", failed},
                      {"oriented", oriented},
                      {"rules", results.size()}}
                     .dump()
              << "\n";
  } else {
    std::cout << "summary: rules=" << results.size() << " oriented="
              << oriented << " not-oriented=" << failed << "\n";
  }
  return failed == 0 ? 0 : 1;
}

int run_critical_pairs(const std::string& rules_name,
                       const std::vector<std::string>& omit,
                       std::size_t step_limit, const std::string& format) {
  cpath::RuleSet rules = rule_set(rules_name).without(omit);
  std::vector<cpath::CriticalPair> pairs =
      cpath::critical_pairs(rules, step_limit);
  std::size_t joinable = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const cpath::CriticalPair& cp = pairs[i];
    if (cp.joinable) ++joinable;
    if (format == "structured") {
      std::cout << json{{"index", i + 1},
                        {"inner", cp.inner->name},
                        {"joinable", cp.joinable},
                        {"left", cpath::print(cp.left)},
                        {"nf_left", cpath::print(cp.nf_left)},
                        {"nf_right", cpath::print(cp.nf_right)},
                        {"outer", cp.outer->name},
                        {"peak", cpath::print(cp.peak)},
                        {"pos", cpath::print_position(cp.pos)},
                        {"right", cpath::print(cp.right)}}
                       .dump()
                << "\n";
    } else {
      std::cout << "cp " << i + 1 << ": " << cpath::print_critical_pair(cp)
                << "\n";
    }
  }
  std::size_t failed = pairs.size() - joinable;
  if (format == "structured") {
    std::cout << json{{"joinable", joinable},
                      {"non_joinable", failed},
                      {"pairs", pairs.size()}}
                     .dump()
              << "\n";
  } else {
    std::cout << "summary: pairs=" << pairs.size() << " joinable=" << joinable
              << " non-joinable=" << failed << "\n";
  }
  return failed == 0 ? 0 : 1;
}

int run_pi1(const std::string& surface_name, const std::string& term_text,
            bool trace, const std::string& format) {
  cpath::Surface surface = cpath::parse_surface(surface_name);
  cpath::TermPtr t = cpath::parse(term_text);
  cpath::CanonicalizeResult res = cpath::canonicalize(surface, t);
  bool structured = format == "structured";
  if (trace) emit_steps(res.trace, structured);
  if (structured) {
    std::cout << json{{"element", cpath::print_element(res.element)},
                      {"surface", cpath::surface_name(surface)},
                      {"word", cpath::print_word(res.word)}}
                     .dump()
              << "\n";
  } else {
    std::cout << cpath::print_element(res.element) << "\n";
    std::cout << "word: " << cpath::print_word(res.word) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewriting engine for computational path terms"};
  app.require_subcommand(1);

  auto add_engine_flags = [](CLI::App* cmd, NormalizeArgs& a) {
    cmd->add_option("--strategy", a.strategy, "Redex selection strategy")
        ->check(CLI::IsMember({"outermost", "innermost", "random"}))
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Seed for the random strategy")
        ->capture_default_str();
    cmd->add_option("--step-limit", a.step_limit, "Maximum rewrite steps")
        ->capture_default_str();
    cmd->add_option("--rules", a.rules, "Rule subset")
        ->check(CLI::IsMember({"all", "core", "mixed", "group"}))
        ->capture_default_str();
    cmd->add_option("--format", a.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };

  NormalizeArgs norm_args;
  CLI::App* norm = app.add_subcommand("normalize", "Rewrite to normal form");
  CLI::Option* norm_term =
      norm->add_option("term", norm_args.term, "Path term");
  CLI::Option* norm_file = norm->add_option(
      "--file", norm_args.file, "Read one term per line from a file");
  norm_term->excludes(norm_file);
  norm->add_flag("--trace", norm_args.trace, "Print every step");
  add_engine_flags(norm, norm_args);

  NormalizeArgs equal_args;
  std::string equal_left, equal_right;
  CLI::App* eq = app.add_subcommand(
      "equal", "Decide rw-equality: do both terms share a normal form?");
  eq->add_option("left", equal_left, "First term")->required();
  eq->add_option("right", equal_right, "Second term")->required();
  add_engine_flags(eq, equal_args);

  NormalizeArgs trace_args;
  CLI::App* tr = app.add_subcommand("trace", "Normalize and show the trace");
  tr->add_option("term", trace_args.term, "Path term")->required();
  add_engine_flags(tr, trace_args);

  std::string rpo_rules = "core";
  std::string rpo_prec = "standard";
  std::string rpo_status = "lex";
  std::string rpo_format = "text";
  CLI::App* rpo = app.add_subcommand(
      "rpo-check", "Check rule orientation under the recursive path order");
  rpo->add_option("--rules", rpo_rules, "Rule subset")
      ->check(CLI::IsMember({"all", "core", "mixed", "group"}))
      ->capture_default_str();
  rpo->add_option("--precedence", rpo_prec, "Precedence table")
      ->check(CLI::IsMember({"standard", "minimal"}))
      ->capture_default_str();
  rpo->add_option("--status", rpo_status,
                  "Argument status for tau (lex) or multiset everywhere")
      ->check(CLI::IsMember({"lex", "multiset"}))
      ->capture_default_str();
  rpo->add_option("--format", rpo_format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string cp_rules = "group";
  std::vector<std::string> cp_omit;
  std::size_t cp_limit = 10000;
  std::string cp_format = "text";
  CLI::App* cp = app.add_subcommand(
      "critical-pairs", "Enumerate critical pairs and check joinability");
  cp->add_option("--rules", cp_rules, "Rule subset")
      ->check(CLI::IsMember({"all", "core", "mixed", "group"}))
      ->capture_default_str();
  cp->add_option("--omit", cp_omit, "Rule names to drop from the subset");
  cp->add_option("--step-limit", cp_limit, "Maximum rewrite steps")
      ->capture_default_str();
  cp->add_option("--format", cp_format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string pi1_surface, pi1_term;
  bool pi1_trace = false;
  std::string pi1_format = "text";
  CLI::App* pi = app.add_subcommand(
      "pi1", "Canonical fundamental-group element of a loop term");
  pi->add_option("surface", pi1_surface, "circle, torus or rp2")->required();
  pi->add_option("term", pi1_term, "Loop term over the surface's generators")
      ->required();
  pi->add_flag("--trace", pi1_trace, "Print every step");
  pi->add_option("--format", pi1_format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (norm->parsed()) {
      if (norm_args.term.empty() && norm_args.file.empty()) {
        throw cpath::Error("normalize needs a term or --file");
      }
      return run_normalize(norm_args);
    }
    if (eq->parsed()) return run_equal(equal_args, equal_left, equal_right);
    if (tr->parsed()) {
      trace_args.trace = true;
      return run_trace(trace_args);
    }
    if (rpo->parsed()) {
      return run_rpo_check(rpo_rules, rpo_prec, rpo_status, rpo_format);
    }
    if (cp->parsed()) {
      return run_critical_pairs(cp_rules, cp_omit, cp_limit, cp_format);
    }
    if (pi->parsed()) {
      return run_pi1(pi1_surface, pi1_term, pi1_trace, pi1_format);
    }
  } catch (const cpath::StepLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cpath::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
