#include "seqsim/simtable.hpp"

#include <cmath>

namespace seqsim {

namespace {

bool valid_simval(double v) {
  return (v >= 0.0 && v <= 1.0) || v == -kInfinity;
}

}  // namespace

SimTable::SimTable(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == kWildcardSymbol)
      throw DataError("the wildcard PHI must not be declared as an atom");
    if (!column_.emplace(atoms_[i], static_cast<int>(i)).second)
      throw DataError("duplicate atom \"" + atoms_[i] + "\"");
  }
}

int SimTable::add_state(std::span<const double> values) {
  if (values.size() != atoms_.size())
    throw DataError("state defines " + std::to_string(values.size()) + " values for " +
                    std::to_string(atoms_.size()) + " atoms");
  for (double v : values) {
    if (!valid_simval(v))
      throw DataError("similarity value " + std::to_string(v) +
                      " outside [0,1] and not -inf");
  }
  rows_.emplace_back(values.begin(), values.end());
  negated_.emplace_back(atoms_.size(), std::nan(""));
  return num_states() - 1;
}

void SimTable::set_negated_override(int state, std::string_view atom, double value) {
  int col = atom_column(atom);
  if (col < 0) throw DataError("negated override for undeclared atom \"" + std::string(atom) + "\"");
  if (!valid_simval(value))
    throw DataError("similarity value " + std::to_string(value) +
                    " outside [0,1] and not -inf");
  negated_[state][col] = value;
}

int SimTable::atom_column(std::string_view name) const {
  auto it = column_.find(std::string(name));
  return it == column_.end() ? -1 : it->second;
}

ResolvedSymbol SimTable::resolve(std::string_view symbol) const {
  ResolvedSymbol r;
  if (symbol == kWildcardSymbol) {
    r.wildcard = true;
    return r;
  }
  if (!symbol.empty() && symbol.front() == '!') {
    r.negated = true;
    symbol.remove_prefix(1);
  }
  r.column = atom_column(symbol);
  if (r.column < 0)
    throw DataError("undeclared symbol \"" + std::string(r.negated ? "!" : "") +
                    std::string(symbol) + "\"");
  return r;
}

double SimTable::simval(int state, const ResolvedSymbol& sym) const {
  if (sym.wildcard) return 1.0;
  double base = rows_[state][sym.column];
  if (!sym.negated) return base;
  double ov = negated_[state][sym.column];
  if (!std::isnan(ov)) return ov;
  return base == -kInfinity ? -kInfinity : 1.0 - base;
}

double SimTable::simval(int state, std::string_view symbol) const {
  return simval(state, resolve(symbol));
}

std::vector<double> simvec(const SimTable& table, std::span<const int> d,
                           const SymbolString& a) {
  if (d.size() != a.size())
    throw UsageError("simvec: sequence and string differ in length");
  std::vector<double> out;
  out.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    ResolvedSymbol sym = table.resolve(a[i]);
    if (sym.wildcard) continue;
    out.push_back(table.simval(d[i], sym));
  }
  return out;
}

ExtValue dist(const SimTable& table, std::span<const int> d, const SymbolString& a,
              NormIndex k) {
  if (d.size() != a.size()) return ExtValue::plus_infinity();
  std::vector<double> v = simvec(table, d, a);
  if (v.empty()) return ExtValue(0.0);
  for (double s : v)
    if (s == -kInfinity) return ExtValue::plus_infinity();
  std::vector<double> ones(v.size(), 1.0);
  return norm_distance(v, ones, k);
}

}  // namespace seqsim
