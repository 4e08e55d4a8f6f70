// simtable.hpp -- per-state similarity values and the pointwise string distance
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seqsim/extvalue.hpp"

namespace seqsim {

// Reserved wildcard symbol name. Never a declared atom; satisfied by every
// database state with similarity 1.
inline constexpr const char* kWildcardSymbol = "PHI";

// A query-side string: a finite sequence over the declared atoms plus PHI.
using SymbolString = std::vector<std::string>;

// How a symbol name reads against a table: the wildcard, an atom column, or
// an atom column through the negated-literal view ("!P").
struct ResolvedSymbol {
  bool wildcard = false;
  bool negated = false;
  int column = -1;
};

// Similarity values of database states with respect to the declared atomic
// queries. Each value is in [0,1] or exactly -inf (hard-constraint miss).
// Negated literals "!P" default to 1 - simval(P) (with -inf fixed) and can
// be overridden per state. Immutable once populated; all reads are const.
class SimTable {
 public:
  SimTable() = default;
  explicit SimTable(std::vector<std::string> atoms);

  // Appends a state; values come in declared-atom order. Returns its index.
  int add_state(std::span<const double> values);
  void set_negated_override(int state, std::string_view atom, double value);

  int num_states() const { return static_cast<int>(rows_.size()); }
  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  int atom_column(std::string_view name) const;  // -1 if undeclared

  ResolvedSymbol resolve(std::string_view symbol) const;  // DataError if unknown
  double simval(int state, const ResolvedSymbol& sym) const;
  double simval(int state, std::string_view symbol) const;

 private:
  std::vector<std::string> atoms_;
  std::unordered_map<std::string, int> column_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::vector<double>> negated_;  // NaN = use the derived default
};

// 1 - simval as a distance contribution; a -inf similarity becomes an
// infinite cost, the wildcard costs nothing.
inline double simval_cost(const SimTable& table, int state, const ResolvedSymbol& sym) {
  if (sym.wildcard) return 0.0;
  double v = table.simval(state, sym);
  return v == -kInfinity ? kInfinity : 1.0 - v;
}

// Similarity vector of the state sequence d against the string a, skipping
// wildcard positions. Empty when a is all wildcards.
std::vector<double> simvec(const SimTable& table, std::span<const int> d,
                           const SymbolString& a);

// Pointwise distance of d against a under F_k: +inf on length mismatch or
// any -inf similarity at a non-wildcard position, 0 on an empty simvec.
ExtValue dist(const SimTable& table, std::span<const int> d, const SymbolString& a,
              NormIndex k);

}  // namespace seqsim
