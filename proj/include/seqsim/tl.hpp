// tl.hpp -- finite-trace temporal logic: syntax, satisfaction, distances
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqsim/distance.hpp"
#include "seqsim/nfa.hpp"
#include "seqsim/simtable.hpp"

namespace seqsim {

enum class TlOp { Atom, True, False, Not, And, Or, Next, Until };

struct TlNode {
  TlOp op = TlOp::True;
  std::string atom;  // Atom only
  int lhs = -1;      // unary child / left operand
  int rhs = -1;
};

// Formula as an arena tree; nodes hold exactly the tree, so length(f) is the
// node count.
struct TlFormula {
  std::vector<TlNode> nodes;
  int root = -1;

  int length() const { return static_cast<int>(nodes.size()); }
  // Atom names, sorted and deduplicated; this fixes the proposition order
  // used by the expansions.
  std::vector<std::string> atoms() const;
  // Negations applied to atoms only (the Lemma 4.1 precondition).
  bool is_nnf() const;
  std::string str() const;
};

// Convenience constructor API used by tests and generators.
class TlBuilder {
 public:
  int atom(std::string name);
  int constant(bool value);
  int negation(int g);
  int conjunction(int g, int h);
  int disjunction(int g, int h);
  int next(int g);
  int until(int g, int h);
  TlFormula take(int root);

 private:
  TlFormula f_;
};

// Grammar: atoms are identifiers, constants true/false, operators
// ! X (prefix) > U (right-associative) > & > |, parentheses override.
TlFormula parse_tl(const std::string& text, std::span<const std::string> props);

// One trace letter: the set of propositions holding in a state, as a bitmask
// over the ordered proposition list.
using PropWorld = uint32_t;

// Finite-trace satisfaction at the start of a nonempty trace.
bool satisfies(const TlFormula& f, std::span<const PropWorld> trace,
               std::span<const std::string> props);

// Syntax-directed distance (Lemma 4.2 evaluation of the inductive
// definition). O(n * length(f)) for the infinite norm, O(n^2 * length(f))
// for finite norms.
DistanceResult syndist_tl(const SimTable& table, std::span<const int> d,
                          const TlFormula& f, NormIndex k);

// Repeats every state index m times: position i*m+j maps to state i.
std::vector<int> expn_states(std::span<const int> d, int m);

// Expands a trace into literals: position i*m+j carries props[j] if it holds
// in world i, else "!"+props[j].
SymbolString expn_world_string(std::span<const PropWorld> s,
                               std::span<const std::string> props);

inline constexpr int kMaxTlProps = 4;  // alphabet is 2^m letters

// Canonical name of a world letter, e.g. "{}", "{P}", "{P,Q}".
std::string world_symbol_name(PropWorld w, std::span<const std::string> props);

// Automaton over world letters accepting exactly the nonempty traces that
// satisfy f. Alphabet index j names the world with bitmask j.
Nfa tl_to_nfa(const TlFormula& f, std::span<const std::string> props);

// Rewrites each world transition into an m-step literal chain, realizing
// the language of expanded traces over the literal alphabet.
Nfa literal_expand_nfa(const Nfa& a, std::span<const std::string> props);

// distance_1(expn(d), L_n(f), F_k) via the automaton route.
DistanceResult semdist1_tl(const SimTable& table, std::span<const int> d,
                           const TlFormula& f, NormIndex k);

// distance_2 variant over the expanded language; closure uses the
// per-position literal pair {P_j, !P_j}. Enumeration-based; capped to
// desk scale (m <= 2, n <= 4).
DistanceResult semdist2_tl(const SimTable& table, std::span<const int> d,
                           const TlFormula& f, NormIndex k);

}  // namespace seqsim
