#include "seqsim/distance.hpp"

#include <algorithm>
#include <vector>

namespace seqsim {

namespace {

// Per-alphabet-symbol table resolution, done once per evaluation.
std::vector<ResolvedSymbol> resolve_alphabet(const SimTable& table, const Nfa& a) {
  std::vector<ResolvedSymbol> syms;
  syms.reserve(a.alphabet.size());
  for (const std::string& name : a.alphabet) syms.push_back(table.resolve(name));
  return syms;
}

struct Adjacency {
  std::vector<std::vector<std::pair<int, int>>> out;  // state -> (symbol, target)
  explicit Adjacency(const Nfa& a) : out(a.num_states) {
    for (const Transition& t : a.transitions) out[t.from].emplace_back(t.symbol, t.to);
  }
};

DistanceResult empty_sequence_result(const Nfa& a) {
  return make_distance_result(a.accepts_empty() ? 0.0 : kInfinity);
}

}  // namespace

DistanceResult distance1_inf(const SimTable& table, std::span<const int> d,
                             const Nfa& a) {
  int n = static_cast<int>(d.size());
  if (n == 0) return empty_sequence_result(a);

  std::vector<ResolvedSymbol> syms = resolve_alphabet(table, a);
  Adjacency adj(a);
  std::vector<char> fin(a.num_states, 0);
  for (int q : a.final) fin[q] = 1;

  std::vector<double> cur(a.num_states, kInfinity), next(a.num_states, kInfinity);
  // base row i = n-1: one-step moves into a final state
  for (int q = 0; q < a.num_states; ++q) {
    double best = kInfinity;
    for (auto [sym, to] : adj.out[q])
      if (fin[to]) best = std::min(best, simval_cost(table, d[n - 1], syms[sym]));
    cur[q] = best;
  }
  for (int i = n - 2; i >= 0; --i) {
    cur.swap(next);
    for (int q = 0; q < a.num_states; ++q) {
      double best = kInfinity;
      for (auto [sym, to] : adj.out[q]) {
        double x = std::max(simval_cost(table, d[i], syms[sym]), next[to]);
        best = std::min(best, x);
      }
      cur[q] = best;
    }
  }
  double result = kInfinity;
  for (int q : a.initial) result = std::min(result, cur[q]);
  return make_distance_result(result);
}

DistanceResult distance1_k_profiles(const SimTable& table, std::span<const int> d,
                                    const Nfa& a, NormIndex norm) {
  if (norm.is_infinite())
    throw UsageError("distance1_k requires a finite norm index");
  int k = norm.k();
  int n = static_cast<int>(d.size());
  if (n == 0) return empty_sequence_result(a);

  std::vector<ResolvedSymbol> syms = resolve_alphabet(table, a);
  Adjacency adj(a);
  std::vector<char> fin(a.num_states, 0);
  for (int q : a.final) fin[q] = 1;

  // profile[q][l] = minimal un-normalized k-power distance over strings in
  // T(q) of effective length l matching the current suffix; +inf = absent.
  auto make_level = [&] {
    return std::vector<std::vector<double>>(a.num_states,
                                            std::vector<double>(n + 1, kInfinity));
  };
  std::vector<std::vector<double>> cur = make_level(), next = make_level();

  // base row i = n-1 (suffix of length 1)
  for (int q = 0; q < a.num_states; ++q) {
    for (auto [sym, to] : adj.out[q]) {
      if (!fin[to]) continue;
      if (syms[sym].wildcard) {
        cur[q][0] = 0.0;
      } else {
        double c = kth_power(simval_cost(table, d[n - 1], syms[sym]), k);
        cur[q][1] = std::min(cur[q][1], c);
      }
    }
  }

  for (int i = n - 2; i >= 0; --i) {
    cur.swap(next);
    int max_l = n - (i + 1);  // entries present in the i+1 level
    for (int q = 0; q < a.num_states; ++q) {
      std::fill(cur[q].begin(), cur[q].begin() + (max_l + 2), kInfinity);
      for (auto [sym, to] : adj.out[q]) {
        const std::vector<double>& src = next[to];
        if (syms[sym].wildcard) {
          for (int l = 0; l <= max_l; ++l)
            if (src[l] < kInfinity) cur[q][l] = std::min(cur[q][l], src[l]);
        } else {
          double c = kth_power(simval_cost(table, d[i], syms[sym]), k);
          if (c == kInfinity) continue;
          for (int l = 0; l <= max_l; ++l)
            if (src[l] < kInfinity) cur[q][l + 1] = std::min(cur[q][l + 1], src[l] + c);
        }
      }
    }
  }

  // combine per Lemma 3.2 with the empty-language convention of returning
  // +inf when no initial profile carries a finite entry
  double result = kInfinity;
  for (int q : a.initial) {
    if (cur[q][0] < kInfinity) return make_distance_result(0.0);
    for (int l = 1; l <= n; ++l)
      if (cur[q][l] < kInfinity)
        result = std::min(result, kth_root(cur[q][l] / static_cast<double>(l), k));
  }
  return make_distance_result(result);
}

namespace {

// Wildcard-free fast path: every accepted suffix string has full effective
// length, so each profile collapses to one cell.
DistanceResult distance1_k_scalar(const SimTable& table, std::span<const int> d,
                                  const Nfa& a, int k) {
  int n = static_cast<int>(d.size());
  std::vector<ResolvedSymbol> syms = resolve_alphabet(table, a);
  Adjacency adj(a);
  std::vector<char> fin(a.num_states, 0);
  for (int q : a.final) fin[q] = 1;

  std::vector<double> cur(a.num_states, kInfinity), next(a.num_states, kInfinity);
  for (int q = 0; q < a.num_states; ++q) {
    for (auto [sym, to] : adj.out[q]) {
      if (!fin[to]) continue;
      double c = kth_power(simval_cost(table, d[n - 1], syms[sym]), k);
      cur[q] = std::min(cur[q], c);
    }
  }
  for (int i = n - 2; i >= 0; --i) {
    cur.swap(next);
    for (int q = 0; q < a.num_states; ++q) {
      cur[q] = kInfinity;
      for (auto [sym, to] : adj.out[q]) {
        double c = kth_power(simval_cost(table, d[i], syms[sym]), k);
        if (c == kInfinity || next[to] == kInfinity) continue;
        cur[q] = std::min(cur[q], next[to] + c);
      }
    }
  }
  double result = kInfinity;
  for (int q : a.initial)
    if (cur[q] < kInfinity)
      result = std::min(result, kth_root(cur[q] / static_cast<double>(n), k));
  return make_distance_result(result);
}

}  // namespace

DistanceResult distance1_k(const SimTable& table, std::span<const int> d, const Nfa& a,
                           NormIndex norm) {
  if (norm.is_infinite())
    throw UsageError("distance1_k requires a finite norm index");
  if (d.empty()) return empty_sequence_result(a);
  if (!a.has_phi_transition())
    return distance1_k_scalar(table, d, a, norm.k());
  return distance1_k_profiles(table, d, a, norm);
}

DistanceResult distance1(const SimTable& table, std::span<const int> d, const Nfa& a,
                         NormIndex k) {
  return k.is_infinite() ? distance1_inf(table, d, a) : distance1_k(table, d, a, k);
}

DistanceResult distance2(const SimTable& table, std::span<const int> d, const Nfa& a,
                         NormIndex k, const AutomatonBudget& budget) {
  Nfa h = maximal_automaton(a, budget);
  return distance1(table, d, h, k);
}

}  // namespace seqsim
