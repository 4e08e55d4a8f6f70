// regex.hpp -- regular-expression queries and their distances
#pragma once

#include <span>
#include <string>
#include <vector>

#include "seqsim/distance.hpp"
#include "seqsim/nfa.hpp"

namespace seqsim {

enum class RegexOp { Symbol, Alt, Concat, Star };

struct RegexNode {
  RegexOp op = RegexOp::Symbol;
  std::string symbol;  // Symbol only
  int lhs = -1;
  int rhs = -1;
};

// Expression tree plus the ambient atomic-query set (the closure in the
// second semantic distance quantifies over the full alphabet, not just the
// symbols that happen to occur).
struct Regex {
  std::vector<RegexNode> nodes;
  int root = -1;
  std::vector<std::string> alphabet;

  int length() const { return static_cast<int>(nodes.size()); }
  std::string str() const;
};

class RegexBuilder {
 public:
  explicit RegexBuilder(std::vector<std::string> alphabet);
  int symbol(std::string name);
  int alternation(int g, int h);
  int concat(int g, int h);
  int star(int g);
  Regex take(int root);

 private:
  Regex f_;
};

// Grammar: symbols are identifiers; juxtaposition concatenates; "|"
// alternates (lowest precedence); "*" is postfix star; parentheses override.
Regex parse_regex(const std::string& text, std::span<const std::string> atoms);

// Epsilon-free position automaton with L(A(f)) = L(f), linear in length(f).
Nfa regex_to_nfa(const Regex& f);

// Syntactic distance, equal to the first semantic distance; computed on the
// automaton route. The empty sequence matches epsilon-accepting expressions
// with distance 0.
DistanceResult syndist_regex(const SimTable& table, std::span<const int> d,
                             const Regex& f, NormIndex k);

// distance_2 over L(f) via the closure/maximal pipeline.
DistanceResult semdist2_regex(const SimTable& table, std::span<const int> d,
                              const Regex& f, NormIndex k,
                              const AutomatonBudget& budget = {});

}  // namespace seqsim
