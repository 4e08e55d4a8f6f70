// oracle.hpp -- brute-force reference implementations of every distance
#pragma once

#include <span>
#include <vector>

#include "seqsim/nfa.hpp"
#include "seqsim/regex.hpp"
#include "seqsim/simtable.hpp"
#include "seqsim/tl.hpp"

namespace seqsim {

struct OracleBudget {
  long long max_strings = 1000000;
  long long max_traces = 100000;
};

// min over the sample of dist(d, a, F_k); +inf over an empty sample.
ExtValue oracle_distance1(const SimTable& table, std::span<const int> d,
                          const LanguageSample& strings, NormIndex k);

// Least fixpoint of: if every delta-variant at a position is present, add
// the wildcard variant. Length-preserving, so the fixed-length slice is
// computed exactly.
LanguageSample oracle_closure(const LanguageSample& strings,
                              const std::vector<std::string>& delta,
                              const OracleBudget& budget = {});

// Closure with a per-position symbol set (the literal-pair reading used by
// the temporal-logic expansions).
LanguageSample oracle_closure_positional(const LanguageSample& strings,
                                         const std::vector<std::vector<std::string>>& delta_at,
                                         const OracleBudget& budget = {});

// The antichain of strings with no strict upper bound under the
// wildcard-refinement order.
LanguageSample oracle_maximal(const LanguageSample& strings);

// All length-n traces satisfying f, by exhaustive enumeration.
std::vector<std::vector<PropWorld>> oracle_tl_models(const TlFormula& f,
                                                     std::span<const std::string> props,
                                                     int n,
                                                     const OracleBudget& budget = {});

// Direct recursive evaluation of the inductive temporal-logic distance
// (the until clause minimizes over explicit suffix vectors); independent of
// the dynamic-programming route.
ExtValue oracle_syndist_tl(const SimTable& table, std::span<const int> d,
                           const TlFormula& f, NormIndex k);

// Direct recursive evaluation of the inductive regular-expression distance,
// memoized on (subexpression, substring); independent of the automaton route.
ExtValue oracle_syndist_regex(const SimTable& table, std::span<const int> d,
                              const Regex& f, NormIndex k);

// All length-n strings of L(f), generated from the syntax tree.
LanguageSample oracle_regex_strings(const Regex& f, int n,
                                    const OracleBudget& budget = {});

}  // namespace seqsim
