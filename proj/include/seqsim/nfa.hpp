// nfa.hpp -- finite automata over named alphabets and the closure/maximal pipeline
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seqsim/errors.hpp"
#include "seqsim/simtable.hpp"

namespace seqsim {

struct Transition {
  int from = 0;
  int symbol = 0;  // index into Nfa::alphabet
  int to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Nondeterministic finite automaton. States are dense indices 0..num_states-1;
// state_names, when present, carry the file-level identifiers. The wildcard
// PHI, when used, is an ordinary alphabet member whose index is cached in phi.
struct Nfa {
  std::vector<std::string> alphabet;
  int phi = -1;
  int num_states = 0;
  std::vector<Transition> transitions;
  std::vector<int> initial;
  std::vector<int> final;
  std::vector<std::string> state_names;  // optional, same size as num_states

  // size(A) = states + transitions.
  int size() const { return num_states + static_cast<int>(transitions.size()); }
  int symbol_index(std::string_view name) const;
  // Appends the symbol if missing; keeps phi in sync. Returns its index.
  int add_symbol(const std::string& name);
  bool has_phi_transition() const;
  bool accepts_empty() const;
  // Internal consistency: transition/initial/final indices in range.
  void validate() const;
};

// Construction caps for the determinization-heavy pipeline.
struct AutomatonBudget {
  int max_states = 500000;
};

// Membership of s (symbol names) in L(a). Undeclared symbols are data errors.
bool accepts(const Nfa& a, const SymbolString& s);

// Subset construction. The result is a complete DFA over the same alphabet
// (the empty subset acts as the sink), with at most 2^|a| + 1 states.
Nfa determinize(const Nfa& a, const AutomatonBudget& budget = {});

// Accepts exactly alphabet* - L(a), over a's declared alphabet.
Nfa complement(const Nfa& a, const AutomatonBudget& budget = {});

// Drops states that are unreachable or cannot reach a final state.
Nfa trim(const Nfa& a);

// Given abar accepting the complement of a base language L over delta (no
// wildcard), returns C over delta + PHI accepting the complement of
// closure(L): on PHI it nondeterministically substitutes some a in delta.
// |C| = |abar|.
Nfa closure_complement(const Nfa& abar, const std::vector<std::string>& delta);

// The full pipeline: H with L(H) = maximal(closure(L(a))). Input must be
// wildcard-free. Triple-exponential in the worst case; intended for
// desk-scale automata.
Nfa maximal_automaton(const Nfa& a, const AutomatonBudget& budget = {});

struct LanguageSample {
  int length = 0;
  std::vector<SymbolString> strings;  // sorted, unique, all of `length`
};

inline constexpr long long kDefaultEnumBudget = 1000000;

// All length-n strings over a's alphabet accepted by a, by exhaustive test.
LanguageSample enumerate_length_n(const Nfa& a, int n,
                                  long long budget = kDefaultEnumBudget);

// JSON automaton format: {"alphabet":[...], "states":[...], "initial":[...],
// "final":[...], "transitions":[[state,symbol,state],...]}. "PHI" denotes the
// wildcard and must not be declared in "alphabet".
Nfa nfa_from_json(const std::string& text);
std::string nfa_to_json(const Nfa& a);

}  // namespace seqsim
