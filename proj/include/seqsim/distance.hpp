// distance.hpp -- dynamic-programming evaluators for distance_1 and distance_2
#pragma once

#include <span>

#include "seqsim/nfa.hpp"
#include "seqsim/simtable.hpp"

namespace seqsim {

struct DistanceResult {
  ExtValue distance;
  ExtValue similarity;
};

inline DistanceResult make_distance_result(double distance) {
  ExtValue d(distance);
  return {d, similarity_of(d)};
}

// distance_1(d, L(a), F_inf): backward max/min recurrence over (position,
// state). O(n * size(a)).
DistanceResult distance1_inf(const SimTable& table, std::span<const int> d,
                             const Nfa& a);

// distance_1(d, L(a), F_k) for finite k. Uses the per-(position,state)
// profiles mapping effective length to the minimal un-normalized k-power
// distance; O(n^2 * size(a)). Wildcard-free automata take a single-entry
// fast path in O(n * size(a)).
DistanceResult distance1_k(const SimTable& table, std::span<const int> d,
                           const Nfa& a, NormIndex k);

// The general profile engine regardless of wildcard content; exposed so the
// fast path can be checked bit-for-bit against it.
DistanceResult distance1_k_profiles(const SimTable& table, std::span<const int> d,
                                    const Nfa& a, NormIndex k);

// Dispatch on the norm.
DistanceResult distance1(const SimTable& table, std::span<const int> d, const Nfa& a,
                         NormIndex k);

// distance_2 = distance_1 against maximal(closure(L(a))). The automaton must
// be wildcard-free; the pipeline refuses inputs whose intermediate stages
// exceed the budget.
DistanceResult distance2(const SimTable& table, std::span<const int> d, const Nfa& a,
                         NormIndex k, const AutomatonBudget& budget = {});

}  // namespace seqsim
