#include "seqsim/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace seqsim {

ExtValue oracle_distance1(const SimTable& table, std::span<const int> d,
                          const LanguageSample& strings, NormIndex k) {
  double best = kInfinity;
  for (const SymbolString& a : strings.strings)
    best = std::min(best, dist(table, d, a, k).get());
  return ExtValue(best);
}

namespace {

LanguageSample closure_fixpoint(const LanguageSample& strings,
                                const std::vector<std::vector<std::string>>& delta_at,
                                const OracleBudget& budget) {
  std::set<SymbolString> lang(strings.strings.begin(), strings.strings.end());
  int n = strings.length;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<SymbolString> additions;
    for (const SymbolString& s : lang) {
      for (int i = 0; i < n; ++i) {
        if (s[i] == kWildcardSymbol) continue;
        bool all_present = true;
        SymbolString probe = s;
        for (const std::string& a : delta_at[i]) {
          probe[i] = a;
          if (!lang.count(probe)) {
            all_present = false;
            break;
          }
        }
        if (!all_present) continue;
        probe[i] = kWildcardSymbol;
        if (!lang.count(probe)) additions.push_back(probe);
      }
    }
    for (SymbolString& s : additions)
      changed |= lang.insert(std::move(s)).second;
    if (static_cast<long long>(lang.size()) > budget.max_strings)
      throw ResourceError("oracle_closure: language exceeded the budget");
  }
  LanguageSample out;
  out.length = n;
  out.strings.assign(lang.begin(), lang.end());
  return out;
}

}  // namespace

LanguageSample oracle_closure(const LanguageSample& strings,
                              const std::vector<std::string>& delta,
                              const OracleBudget& budget) {
  if (delta.empty()) throw UsageError("oracle_closure: empty symbol set");
  std::vector<std::vector<std::string>> delta_at(strings.length, delta);
  return closure_fixpoint(strings, delta_at, budget);
}

LanguageSample oracle_closure_positional(
    const LanguageSample& strings,
    const std::vector<std::vector<std::string>>& delta_at,
    const OracleBudget& budget) {
  if (static_cast<int>(delta_at.size()) != strings.length)
    throw UsageError("oracle_closure_positional: one symbol set per position required");
  return closure_fixpoint(strings, delta_at, budget);
}

namespace {

// alpha < beta: equal length, alpha refines beta's wildcards, strictly.
bool strictly_below(const SymbolString& alpha, const SymbolString& beta) {
  if (alpha.size() != beta.size()) return false;
  bool strict = false;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == beta[i]) continue;
    if (beta[i] != kWildcardSymbol || alpha[i] == kWildcardSymbol) return false;
    strict = true;
  }
  return strict;
}

}  // namespace

LanguageSample oracle_maximal(const LanguageSample& strings) {
  LanguageSample out;
  out.length = strings.length;
  for (const SymbolString& a : strings.strings) {
    bool dominated = false;
    for (const SymbolString& b : strings.strings) {
      if (strictly_below(a, b)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.strings.push_back(a);
  }
  return out;
}

std::vector<std::vector<PropWorld>> oracle_tl_models(const TlFormula& f,
                                                     std::span<const std::string> props,
                                                     int n, const OracleBudget& budget) {
  if (n < 1) return {};
  int m = static_cast<int>(props.size());
  long long letters = 1LL << m;
  double total = std::pow(static_cast<double>(letters), n);
  if (total > static_cast<double>(budget.max_traces))
    throw ResourceError("oracle_tl_models: trace count exceeds the budget");

  std::vector<std::vector<PropWorld>> models;
  std::vector<PropWorld> trace(n, 0);
  for (;;) {
    if (satisfies(f, trace, props)) models.push_back(trace);
    int pos = n - 1;
    while (pos >= 0 && trace[pos] == static_cast<PropWorld>(letters - 1))
      trace[pos--] = 0;
    if (pos < 0) break;
    ++trace[pos];
  }
  return models;
}

// ------------------------------------------- direct temporal-logic distance

namespace {

double direct_syndist(const SimTable& table, std::span<const int> d, const TlFormula& f,
                      int id, int i, NormIndex norm) {
  const TlNode& nd = f.nodes[id];
  int n = static_cast<int>(d.size());
  switch (nd.op) {
    case TlOp::Atom:
      return simval_cost(table, d[i], table.resolve(nd.atom));
    case TlOp::True: return 0.0;
    case TlOp::False: return 1.0;
    case TlOp::Not: {
      if (f.nodes[nd.lhs].op == TlOp::Atom)
        return simval_cost(table, d[i], table.resolve("!" + f.nodes[nd.lhs].atom));
      double v = direct_syndist(table, d, f, nd.lhs, i, norm);
      return v == kInfinity ? 0.0 : 1.0 - v;
    }
    case TlOp::And:
      return std::max(direct_syndist(table, d, f, nd.lhs, i, norm),
                      direct_syndist(table, d, f, nd.rhs, i, norm));
    case TlOp::Or:
      return std::min(direct_syndist(table, d, f, nd.lhs, i, norm),
                      direct_syndist(table, d, f, nd.rhs, i, norm));
    case TlOp::Next:
      return i + 1 < n ? direct_syndist(table, d, f, nd.lhs, i + 1, norm) : kInfinity;
    case TlOp::Until: {
      // min over r of F(U_r, 1): the vector carries the g-distances at
      // i..r-1 and the h-distance at r
      double best = kInfinity;
      for (int r = i; r < n; ++r) {
        std::vector<double> components;
        for (int j = i; j < r; ++j)
          components.push_back(direct_syndist(table, d, f, nd.lhs, j, norm));
        components.push_back(direct_syndist(table, d, f, nd.rhs, r, norm));
        bool infinite = false;
        for (double c : components)
          if (c == kInfinity) infinite = true;
        if (infinite) continue;
        double value;
        if (norm.is_infinite()) {
          value = *std::max_element(components.begin(), components.end());
        } else {
          double sum = 0.0;
          for (double c : components) sum += kth_power(c, norm.k());
          value = kth_root(sum / static_cast<double>(components.size()), norm.k());
        }
        best = std::min(best, value);
      }
      return best;
    }
  }
  return kInfinity;
}

}  // namespace

ExtValue oracle_syndist_tl(const SimTable& table, std::span<const int> d,
                           const TlFormula& f, NormIndex k) {
  if (d.empty()) throw UsageError("oracle_syndist_tl: empty sequence");
  return ExtValue(direct_syndist(table, d, f, f.root, 0, k));
}

// ---------------------------------------- direct regular-expression distance

namespace {

// Memoized minimal un-normalized k-power cost (finite k) or minimal maximal
// cost (infinite norm) over strings of L(node) matching d[i..j).
class RegexDirect {
 public:
  RegexDirect(const SimTable& table, std::span<const int> d, const Regex& f,
              NormIndex norm)
      : table_(table), d_(d), f_(f), norm_(norm) {
    int n = static_cast<int>(d.size());
    memo_.assign(f.nodes.size(),
                 std::vector<std::vector<double>>(n + 1, std::vector<double>(n + 1, -1.0)));
  }

  double eval(int id, int i, int j) {
    double& slot = memo_[id][i][j];
    if (slot >= 0.0) return slot;
    slot = kInfinity;  // guards against re-entry; star recursion shrinks j-i
    const RegexNode& nd = f_.nodes[id];
    double best = kInfinity;
    switch (nd.op) {
      case RegexOp::Symbol:
        if (j - i == 1) {
          double c = simval_cost(table_, d_[i], table_.resolve(nd.symbol));
          best = norm_.is_infinite() ? c : kth_power(c, norm_.k());
        }
        break;
      case RegexOp::Alt:
        best = std::min(eval(nd.lhs, i, j), eval(nd.rhs, i, j));
        break;
      case RegexOp::Concat:
        for (int mid = i; mid <= j; ++mid)
          best = std::min(best, combine(eval(nd.lhs, i, mid), eval(nd.rhs, mid, j)));
        break;
      case RegexOp::Star:
        if (i == j) {
          best = 0.0;
        } else {
          // first factor nonempty, remainder stays under the star
          for (int mid = i + 1; mid <= j; ++mid)
            best = std::min(best, combine(eval(nd.lhs, i, mid), eval(id, mid, j)));
        }
        break;
    }
    slot = best;
    return slot;
  }

  double result() {
    int n = static_cast<int>(d_.size());
    double w = eval(f_.root, 0, n);
    if (w == kInfinity) return kInfinity;
    if (n == 0) return 0.0;
    return norm_.is_infinite() ? w : kth_root(w / static_cast<double>(n), norm_.k());
  }

 private:
  double combine(double u, double v) const {
    if (u == kInfinity || v == kInfinity) return kInfinity;
    return norm_.is_infinite() ? std::max(u, v) : u + v;
  }

  const SimTable& table_;
  std::span<const int> d_;
  const Regex& f_;
  NormIndex norm_;
  std::vector<std::vector<std::vector<double>>> memo_;
};

}  // namespace

ExtValue oracle_syndist_regex(const SimTable& table, std::span<const int> d,
                              const Regex& f, NormIndex k) {
  if (f.root < 0) throw UsageError("oracle_syndist_regex: empty expression");
  return ExtValue(RegexDirect(table, d, f, k).result());
}

namespace {

using StringsByLen = std::map<std::pair<int, int>, std::vector<SymbolString>>;

const std::vector<SymbolString>& regex_strings(const Regex& f, int id, int len,
                                               StringsByLen& memo, long long budget) {
  auto key = std::make_pair(id, len);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  memo[key] = {};  // settle the slot before recursing (star self-reference)

  std::set<SymbolString> out;
  const RegexNode& nd = f.nodes[id];
  switch (nd.op) {
    case RegexOp::Symbol:
      if (len == 1) out.insert({nd.symbol});
      break;
    case RegexOp::Alt: {
      for (const SymbolString& s : regex_strings(f, nd.lhs, len, memo, budget)) out.insert(s);
      for (const SymbolString& s : regex_strings(f, nd.rhs, len, memo, budget)) out.insert(s);
      break;
    }
    case RegexOp::Concat: {
      for (int l1 = 0; l1 <= len; ++l1) {
        const auto& left = regex_strings(f, nd.lhs, l1, memo, budget);
        if (left.empty()) continue;
        const auto& right = regex_strings(f, nd.rhs, len - l1, memo, budget);
        for (const SymbolString& a : left)
          for (const SymbolString& b : right) {
            SymbolString s = a;
            s.insert(s.end(), b.begin(), b.end());
            out.insert(std::move(s));
          }
      }
      break;
    }
    case RegexOp::Star: {
      if (len == 0) {
        out.insert(SymbolString{});
      } else {
        for (int l1 = 1; l1 <= len; ++l1) {
          const auto& head = regex_strings(f, nd.lhs, l1, memo, budget);
          if (head.empty()) continue;
          const auto& tail = regex_strings(f, id, len - l1, memo, budget);
          for (const SymbolString& a : head)
            for (const SymbolString& b : tail) {
              SymbolString s = a;
              s.insert(s.end(), b.begin(), b.end());
              out.insert(std::move(s));
            }
        }
      }
      break;
    }
  }
  if (static_cast<long long>(out.size()) > budget)
    throw ResourceError("oracle_regex_strings: language slice exceeds the budget");
  auto& slot = memo[key];
  slot.assign(out.begin(), out.end());
  return slot;
}

}  // namespace

LanguageSample oracle_regex_strings(const Regex& f, int n, const OracleBudget& budget) {
  if (f.root < 0) throw UsageError("oracle_regex_strings: empty expression");
  StringsByLen memo;
  LanguageSample out;
  out.length = n;
  out.strings = regex_strings(f, f.root, n, memo, budget.max_strings);
  return out;
}

}  // namespace seqsim
