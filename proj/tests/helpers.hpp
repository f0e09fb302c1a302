// Shared test utilities: deterministic random term generation over chosen
// signature fragments, and helpers to invoke the command-line binary.

#pragma once

#include <array>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cpath/term.hpp"

namespace helpers {

// Which operators the generator may use.
enum class Signature {
  Word,  // atoms, rho, sigma, tau: the free-word algebra
  Core,  // Word plus subL/subR
  Full,  // everything, including xi/mu/nu at their arities
};

inline cpath::TermPtr random_term(std::mt19937_64& rng, int depth,
                                  Signature sig,
                                  const std::vector<std::string>& atoms = {
                                      "a", "b", "c"}) {
  using cpath::Op;
  auto pick = [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };
  if (depth <= 0 || pick(4) == 0) {
    if (pick(4) == 0) return cpath::rho();
    return cpath::atom(atoms[pick(atoms.size())]);
  }
  auto sub = [&](int) { return random_term(rng, depth - 1, sig, atoms); };
  struct Choice {
    Op op;
    int arity;
  };
  static const std::array<Choice, 3> word_ops = {
      {{Op::Sigma, 1}, {Op::Tau, 2}, {Op::Tau, 2}}};
  static const std::array<Choice, 5> core_ops = {{{Op::Sigma, 1},
                                                  {Op::Tau, 2},
                                                  {Op::Tau, 2},
                                                  {Op::SubL, 2},
                                                  {Op::SubR, 2}}};
  static const std::array<Choice, 12> full_ops = {{{Op::Sigma, 1},
                                                   {Op::Tau, 2},
                                                   {Op::SubL, 2},
                                                   {Op::SubR, 2},
                                                   {Op::Xi, 1},
                                                   {Op::Xi, 2},
                                                   {Op::Xi1, 1},
                                                   {Op::Xi2, 1},
                                                   {Op::XiA, 2},
                                                   {Op::Mu, 1},
                                                   {Op::Mu2, 1},
                                                   {Op::Nu, 1}}};
  Choice c{Op::Sigma, 1};
  switch (sig) {
    case Signature::Word:
      c = word_ops[pick(word_ops.size())];
      break;
    case Signature::Core:
      c = core_ops[pick(core_ops.size())];
      break;
    case Signature::Full:
      // Mu at a random arity 1-3 for one slot of the table.
      c = full_ops[pick(full_ops.size() + 1) % full_ops.size()];
      if (c.op == Op::Mu) c.arity = 1 + static_cast<int>(pick(3));
      break;
  }
  std::vector<cpath::TermPtr> args;
  for (int i = 0; i < c.arity; ++i) args.push_back(sub(i));
  return cpath::make(c.op, args);
}

inline void collect_positions(const cpath::TermPtr& t, cpath::Position& here,
                              std::vector<cpath::Position>& out) {
  out.push_back(here);
  for (int i = 0; i < static_cast<int>(t->args.size()); ++i) {
    here.push_back(i);
    collect_positions(t->args[static_cast<std::size_t>(i)], here, out);
    here.pop_back();
  }
}

// All positions of t in preorder (root first).
inline std::vector<cpath::Position> positions(const cpath::TermPtr& t) {
  std::vector<cpath::Position> out;
  cpath::Position here;
  collect_positions(t, here, out);
  return out;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr merged
};

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = CPATH_CLI_BIN;
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  CliResult res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    res.output.append(buf, n);
  }
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace helpers
