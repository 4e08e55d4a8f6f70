// support.hpp -- shared fixtures and seeded instance generators for tests
#pragma once

#include <random>
#include <string>
#include <vector>

#include "seqsim/nfa.hpp"
#include "seqsim/regex.hpp"
#include "seqsim/simtable.hpp"
#include "seqsim/tl.hpp"

namespace testsupport {

using namespace seqsim;

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// The worked two-state example: simval(d0,a)=simval(d0,b)=0.5,
// simval(d1,a)=simval(d1,b)=0.
inline SimTable golden_table() {
  SimTable t(std::vector<std::string>{"a", "b"});
  t.add_state(std::vector<double>{0.5, 0.5});
  t.add_state(std::vector<double>{0.0, 0.0});
  return t;
}

// Three-state machine accepting exactly {ab, bb}.
inline Nfa golden_nfa() {
  Nfa a;
  a.add_symbol("a");
  a.add_symbol("b");
  a.num_states = 3;
  a.transitions = {{0, 0, 1}, {0, 1, 1}, {1, 1, 2}};
  a.initial = {0};
  a.final = {2};
  return a;
}

inline std::vector<int> iota_range(int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = i;
  return d;
}

// Random table over the given atoms with values on the grid {0,.25,.5,.75,1}.
inline SimTable random_table(Rng& rng, const std::vector<std::string>& atoms,
                             int states) {
  SimTable t(atoms);
  for (int i = 0; i < states; ++i) {
    std::vector<double> row;
    for (size_t j = 0; j < atoms.size(); ++j) row.push_back(pick(rng, 0, 4) * 0.25);
    t.add_state(row);
  }
  return t;
}

// Random NFA: up to max_states states over a 1..max_syms letter alphabet,
// random transitions, nonempty initial set, possibly empty final set.
inline Nfa random_nfa(Rng& rng, int max_states, int max_syms,
                      bool allow_empty_final = true) {
  static const std::vector<std::string> names = {"a", "b", "c"};
  Nfa a;
  int nsym = pick(rng, 1, max_syms);
  for (int s = 0; s < nsym; ++s) a.add_symbol(names[s]);
  a.num_states = pick(rng, 1, max_states);
  int density = pick(rng, 25, 75);  // percent chance per (q, sym, q')
  for (int q = 0; q < a.num_states; ++q)
    for (int s = 0; s < nsym; ++s)
      for (int r = 0; r < a.num_states; ++r)
        if (pick(rng, 1, 100) <= density) a.transitions.push_back({q, s, r});
  for (int q = 0; q < a.num_states; ++q) {
    if (pick(rng, 0, 1)) a.initial.push_back(q);
    if (pick(rng, 0, 2) == 0) a.final.push_back(q);
  }
  if (a.initial.empty()) a.initial.push_back(pick(rng, 0, a.num_states - 1));
  if (a.final.empty() && !allow_empty_final)
    a.final.push_back(pick(rng, 0, a.num_states - 1));
  return a;
}

// Random NFA that may also use wildcard transitions.
inline Nfa random_nfa_with_phi(Rng& rng, int max_states, int max_syms) {
  Nfa a = random_nfa(rng, max_states, max_syms);
  int phi = a.add_symbol(kWildcardSymbol);
  for (int q = 0; q < a.num_states; ++q)
    for (int r = 0; r < a.num_states; ++r)
      if (pick(rng, 1, 100) <= 30) a.transitions.push_back({q, phi, r});
  return a;
}

// Random formula in negation normal form (atoms, negated atoms, and/or/X/U)
// with at most max_len nodes over the given propositions.
inline int random_nnf_node(Rng& rng, TlBuilder& b,
                           const std::vector<std::string>& props, int budget) {
  if (budget <= 1) {
    int atom = b.atom(props[pick(rng, 0, static_cast<int>(props.size()) - 1)]);
    return atom;
  }
  if (budget == 2 && pick(rng, 0, 1))
    return b.negation(b.atom(props[pick(rng, 0, static_cast<int>(props.size()) - 1)]));
  switch (pick(rng, 0, 5)) {
    case 0: return b.atom(props[pick(rng, 0, static_cast<int>(props.size()) - 1)]);
    case 1: return b.negation(b.atom(props[pick(rng, 0, static_cast<int>(props.size()) - 1)]));
    case 2: return b.next(random_nnf_node(rng, b, props, budget - 1));
    case 3: {
      int l = random_nnf_node(rng, b, props, (budget - 1) / 2);
      int r = random_nnf_node(rng, b, props, (budget - 1) / 2);
      return b.conjunction(l, r);
    }
    case 4: {
      int l = random_nnf_node(rng, b, props, (budget - 1) / 2);
      int r = random_nnf_node(rng, b, props, (budget - 1) / 2);
      return b.disjunction(l, r);
    }
    default: {
      int l = random_nnf_node(rng, b, props, (budget - 1) / 2);
      int r = random_nnf_node(rng, b, props, (budget - 1) / 2);
      return b.until(l, r);
    }
  }
}

inline TlFormula random_nnf(Rng& rng, const std::vector<std::string>& props,
                            int max_len) {
  TlBuilder b;
  int root = random_nnf_node(rng, b, props, max_len);
  return b.take(root);
}

// Random regular expression with at most max_len nodes.
inline int random_regex_node(Rng& rng, RegexBuilder& b,
                             const std::vector<std::string>& atoms, int budget) {
  if (budget <= 1)
    return b.symbol(atoms[pick(rng, 0, static_cast<int>(atoms.size()) - 1)]);
  switch (pick(rng, 0, 3)) {
    case 0: return b.symbol(atoms[pick(rng, 0, static_cast<int>(atoms.size()) - 1)]);
    case 1: return b.star(random_regex_node(rng, b, atoms, budget - 1));
    case 2: {
      int l = random_regex_node(rng, b, atoms, (budget - 1) / 2);
      int r = random_regex_node(rng, b, atoms, (budget - 1) / 2);
      return b.alternation(l, r);
    }
    default: {
      int l = random_regex_node(rng, b, atoms, (budget - 1) / 2);
      int r = random_regex_node(rng, b, atoms, (budget - 1) / 2);
      return b.concat(l, r);
    }
  }
}

inline Regex random_regex(Rng& rng, const std::vector<std::string>& atoms, int max_len) {
  RegexBuilder b(atoms);
  int root = random_regex_node(rng, b, atoms, max_len);
  return b.take(root);
}

// All formulas with exactly `size` nodes over the ops {P, true, false, !, &,
// |, X, U}; used for the exhaustive small-instance checks.
inline void enumerate_formulas(int size, const std::string& prop,
                               std::vector<TlFormula>& out) {
  struct Gen {
    const std::string& prop;
    std::vector<TlFormula>& out;

    // returns all subtree shapes of the exact size as builder programs
    std::vector<TlFormula> build(int sz) {
      std::vector<TlFormula> result;
      if (sz <= 0) return result;
      if (sz == 1) {
        for (int kind = 0; kind < 3; ++kind) {
          TlBuilder b;
          int root = kind == 0 ? b.atom(prop) : b.constant(kind == 1);
          result.push_back(b.take(root));
        }
        return result;
      }
      for (const TlFormula& child : build(sz - 1)) {
        for (int unary = 0; unary < 2; ++unary) {
          TlBuilder b;
          int c = append(b, child, child.root);
          result.push_back(b.take(unary ? b.negation(c) : b.next(c)));
        }
      }
      for (int lsz = 1; lsz <= sz - 2; ++lsz) {
        for (const TlFormula& lhs : build(lsz)) {
          for (const TlFormula& rhs : build(sz - 1 - lsz)) {
            for (int op = 0; op < 3; ++op) {
              TlBuilder b;
              int l = append(b, lhs, lhs.root);
              int r = append(b, rhs, rhs.root);
              int root = op == 0   ? b.conjunction(l, r)
                         : op == 1 ? b.disjunction(l, r)
                                   : b.until(l, r);
              result.push_back(b.take(root));
            }
          }
        }
      }
      return result;
    }

    static int append(TlBuilder& b, const TlFormula& f, int id) {
      const TlNode& nd = f.nodes[id];
      switch (nd.op) {
        case TlOp::Atom: return b.atom(nd.atom);
        case TlOp::True: return b.constant(true);
        case TlOp::False: return b.constant(false);
        case TlOp::Not: return b.negation(append(b, f, nd.lhs));
        case TlOp::Next: return b.next(append(b, f, nd.lhs));
        case TlOp::And: {
          int l = append(b, f, nd.lhs);
          return b.conjunction(l, append(b, f, nd.rhs));
        }
        case TlOp::Or: {
          int l = append(b, f, nd.lhs);
          return b.disjunction(l, append(b, f, nd.rhs));
        }
        case TlOp::Until: {
          int l = append(b, f, nd.lhs);
          return b.until(l, append(b, f, nd.rhs));
        }
      }
      return -1;
    }
  };
  Gen gen{prop, out};
  for (TlFormula& f : gen.build(size)) out.push_back(std::move(f));
}

}  // namespace testsupport
