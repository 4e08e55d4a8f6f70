#include "seqsim/nfa.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "json.hpp"

namespace seqsim {

namespace {

std::vector<char> state_mask(const std::vector<int>& states, int n) {
  std::vector<char> mask(n, 0);
  for (int q : states) mask[q] = 1;
  return mask;
}

std::vector<std::vector<std::pair<int, int>>> out_edges(const Nfa& a) {
  std::vector<std::vector<std::pair<int, int>>> out(a.num_states);
  for (const Transition& t : a.transitions) out[t.from].emplace_back(t.symbol, t.to);
  return out;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void dedupe_transitions(Nfa& a) {
  std::sort(a.transitions.begin(), a.transitions.end());
  a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()),
                      a.transitions.end());
}

using Bits = std::vector<uint64_t>;

void set_bit(Bits& b, int i) { b[i >> 6] |= uint64_t(1) << (i & 63); }

void or_into(Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

bool intersects(const Bits& a, const std::vector<char>& mask) {
  for (size_t blk = 0; blk < a.size(); ++blk) {
    uint64_t w = a[blk];
    while (w) {
      int bit = std::countr_zero(w);
      if (mask[blk * 64 + bit]) return true;
      w &= w - 1;
    }
  }
  return false;
}

}  // namespace

int Nfa::symbol_index(std::string_view name) const {
  for (size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return static_cast<int>(i);
  return -1;
}

int Nfa::add_symbol(const std::string& name) {
  int idx = symbol_index(name);
  if (idx >= 0) return idx;
  alphabet.push_back(name);
  idx = static_cast<int>(alphabet.size()) - 1;
  if (name == kWildcardSymbol) phi = idx;
  return idx;
}

bool Nfa::has_phi_transition() const {
  if (phi < 0) return false;
  for (const Transition& t : transitions)
    if (t.symbol == phi) return true;
  return false;
}

bool Nfa::accepts_empty() const {
  std::vector<char> fin = state_mask(final, num_states);
  for (int q : initial)
    if (fin[q]) return true;
  return false;
}

void Nfa::validate() const {
  int nsym = static_cast<int>(alphabet.size());
  for (const Transition& t : transitions) {
    if (t.from < 0 || t.from >= num_states || t.to < 0 || t.to >= num_states)
      throw DataError("transition references an undeclared state");
    if (t.symbol < 0 || t.symbol >= nsym)
      throw DataError("transition references an undeclared symbol");
  }
  for (int q : initial)
    if (q < 0 || q >= num_states) throw DataError("initial state out of range");
  for (int q : final)
    if (q < 0 || q >= num_states) throw DataError("final state out of range");
  if (phi >= 0 && (phi >= nsym || alphabet[phi] != kWildcardSymbol))
    throw DataError("phi index out of sync with the alphabet");
}

bool accepts(const Nfa& a, const SymbolString& s) {
  std::vector<int> syms;
  syms.reserve(s.size());
  for (const std::string& name : s) {
    int idx = a.symbol_index(name);
    if (idx < 0) throw DataError("undeclared symbol \"" + name + "\"");
    syms.push_back(idx);
  }
  std::vector<char> cur(a.num_states, 0), next;
  for (int q : a.initial) cur[q] = 1;
  auto out = out_edges(a);
  for (int sym : syms) {
    next.assign(a.num_states, 0);
    bool any = false;
    for (int q = 0; q < a.num_states; ++q) {
      if (!cur[q]) continue;
      for (auto [tsym, to] : out[q]) {
        if (tsym == sym) {
          next[to] = 1;
          any = true;
        }
      }
    }
    if (!any) return false;
    cur.swap(next);
  }
  std::vector<char> fin = state_mask(a.final, a.num_states);
  for (int q = 0; q < a.num_states; ++q)
    if (cur[q] && fin[q]) return true;
  return false;
}

Nfa determinize(const Nfa& a, const AutomatonBudget& budget) {
  int nsym = static_cast<int>(a.alphabet.size());
  int blocks = std::max(1, (a.num_states + 63) / 64);

  // successor bitset per (state, symbol)
  std::vector<Bits> succ(static_cast<size_t>(a.num_states) * nsym, Bits(blocks, 0));
  for (const Transition& t : a.transitions)
    set_bit(succ[static_cast<size_t>(t.from) * nsym + t.symbol], t.to);

  std::vector<char> fin = state_mask(a.final, a.num_states);

  Nfa d;
  d.alphabet = a.alphabet;
  d.phi = a.phi;

  std::map<Bits, int> id;
  std::vector<Bits> subsets;
  auto intern = [&](const Bits& b) {
    auto [it, inserted] = id.emplace(b, static_cast<int>(subsets.size()));
    if (inserted) {
      subsets.push_back(b);
      if (static_cast<int>(subsets.size()) > budget.max_states)
        throw ResourceError("determinization exceeded the state budget (" +
                            std::to_string(budget.max_states) + ")");
    }
    return it->second;
  };

  Bits start(blocks, 0);
  for (int q : a.initial) set_bit(start, q);
  intern(start);

  for (size_t cur = 0; cur < subsets.size(); ++cur) {
    Bits s = subsets[cur];  // copy: subsets may reallocate
    for (int sym = 0; sym < nsym; ++sym) {
      Bits t(blocks, 0);
      for (size_t blk = 0; blk < s.size(); ++blk) {
        uint64_t w = s[blk];
        while (w) {
          int bit = std::countr_zero(w);
          or_into(t, succ[(blk * 64 + bit) * static_cast<size_t>(nsym) + sym]);
          w &= w - 1;
        }
      }
      int to = intern(t);
      d.transitions.push_back({static_cast<int>(cur), sym, to});
    }
  }

  d.num_states = static_cast<int>(subsets.size());
  d.initial = {0};
  for (int q = 0; q < d.num_states; ++q)
    if (intersects(subsets[q], fin)) d.final.push_back(q);
  return d;
}

Nfa complement(const Nfa& a, const AutomatonBudget& budget) {
  Nfa d = determinize(a, budget);
  std::vector<char> fin = state_mask(d.final, d.num_states);
  d.final.clear();
  for (int q = 0; q < d.num_states; ++q)
    if (!fin[q]) d.final.push_back(q);
  return d;
}

Nfa trim(const Nfa& a) {
  auto out = out_edges(a);
  std::vector<std::vector<int>> in(a.num_states);
  for (const Transition& t : a.transitions) in[t.to].push_back(t.from);

  std::vector<char> reach(a.num_states, 0), live(a.num_states, 0);
  std::queue<int> work;
  for (int q : a.initial)
    if (!reach[q]) {
      reach[q] = 1;
      work.push(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (auto [sym, to] : out[q])
      if (!reach[to]) {
        reach[to] = 1;
        work.push(to);
      }
  }
  for (int q : a.final)
    if (!live[q]) {
      live[q] = 1;
      work.push(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (int p : in[q])
      if (!live[p]) {
        live[p] = 1;
        work.push(p);
      }
  }

  std::vector<int> remap(a.num_states, -1);
  Nfa r;
  r.alphabet = a.alphabet;
  r.phi = a.phi;
  for (int q = 0; q < a.num_states; ++q)
    if (reach[q] && live[q]) remap[q] = r.num_states++;
  for (const Transition& t : a.transitions)
    if (remap[t.from] >= 0 && remap[t.to] >= 0)
      r.transitions.push_back({remap[t.from], t.symbol, remap[t.to]});
  for (int q : a.initial)
    if (remap[q] >= 0) r.initial.push_back(remap[q]);
  for (int q : a.final)
    if (remap[q] >= 0) r.final.push_back(remap[q]);
  sort_unique(r.initial);
  sort_unique(r.final);
  dedupe_transitions(r);
  return r;
}

Nfa closure_complement(const Nfa& abar, const std::vector<std::string>& delta) {
  if (delta.empty()) throw UsageError("closure_complement: empty symbol set");
  if (abar.phi >= 0)
    throw UsageError("closure_complement: the base automaton must be wildcard-free");
  for (const std::string& s : delta)
    if (abar.symbol_index(s) < 0)
      throw UsageError("closure_complement: symbol \"" + s + "\" not in the automaton alphabet");

  Nfa c = abar;
  int phi = c.add_symbol(kWildcardSymbol);
  // On PHI, guess some a in delta and follow abar's move on it.
  std::set<std::pair<int, int>> added;
  std::vector<Transition> phi_edges;
  for (const Transition& t : abar.transitions) {
    if (added.emplace(t.from, t.to).second)
      phi_edges.push_back({t.from, phi, t.to});
  }
  c.transitions.insert(c.transitions.end(), phi_edges.begin(), phi_edges.end());
  return c;
}

namespace {

// The "at least one symbol rewritten to PHI" branch of the D automaton:
// two flagged copies of cbar; reading a in delta may instead feed PHI to
// cbar, setting the flag. Final only with the flag set.
Nfa rewrite_product(const Nfa& cbar) {
  Nfa p;
  p.alphabet = cbar.alphabet;
  p.phi = cbar.phi;
  p.num_states = 2 * cbar.num_states;
  auto id = [&](int q, int flag) { return 2 * q + flag; };
  for (const Transition& t : cbar.transitions)
    for (int flag = 0; flag < 2; ++flag)
      p.transitions.push_back({id(t.from, flag), t.symbol, id(t.to, flag)});
  // Rewrites: on a != PHI, follow cbar's PHI move and raise the flag.
  std::vector<std::vector<int>> phi_to(cbar.num_states);
  for (const Transition& t : cbar.transitions)
    if (t.symbol == cbar.phi) phi_to[t.from].push_back(t.to);
  int nsym = static_cast<int>(cbar.alphabet.size());
  for (int q = 0; q < cbar.num_states; ++q) {
    for (int to : phi_to[q]) {
      for (int sym = 0; sym < nsym; ++sym) {
        if (sym == cbar.phi) continue;
        p.transitions.push_back({id(q, 0), sym, id(to, 1)});
        p.transitions.push_back({id(q, 1), sym, id(to, 1)});
      }
    }
  }
  for (int q : cbar.initial) p.initial.push_back(id(q, 0));
  for (int q : cbar.final) p.final.push_back(id(q, 1));
  dedupe_transitions(p);
  return p;
}

// Disjoint union over an identical alphabet.
Nfa automaton_union(const Nfa& a, const Nfa& b) {
  Nfa u;
  u.alphabet = a.alphabet;
  u.phi = a.phi;
  u.num_states = a.num_states + b.num_states;
  u.transitions = a.transitions;
  for (const Transition& t : b.transitions)
    u.transitions.push_back({t.from + a.num_states, t.symbol, t.to + a.num_states});
  u.initial = a.initial;
  for (int q : b.initial) u.initial.push_back(q + a.num_states);
  u.final = a.final;
  for (int q : b.final) u.final.push_back(q + a.num_states);
  return u;
}

}  // namespace

Nfa maximal_automaton(const Nfa& a, const AutomatonBudget& budget) {
  if (a.phi >= 0)
    throw UsageError("maximal_automaton: input must be wildcard-free");
  if (a.alphabet.empty())
    throw UsageError("maximal_automaton: empty alphabet");

  Nfa abar = trim(complement(a, budget));
  Nfa c = closure_complement(abar, a.alphabet);
  // c rejects exactly closure(L); its complement accepts closure(L) itself
  Nfa cbar = complement(c, budget);
  Nfa d = automaton_union(trim(c), rewrite_product(trim(cbar)));
  return trim(complement(d, budget));
}

LanguageSample enumerate_length_n(const Nfa& a, int n, long long budget) {
  if (n < 0) throw UsageError("enumerate_length_n: negative length");
  LanguageSample sample;
  sample.length = n;
  if (n == 0) {
    if (a.accepts_empty()) sample.strings.push_back({});
    return sample;
  }
  int nsym = static_cast<int>(a.alphabet.size());
  if (nsym == 0) return sample;
  double count = std::pow(static_cast<double>(nsym), n);
  if (count > static_cast<double>(budget))
    throw ResourceError("enumerate_length_n: |alphabet|^n = " + std::to_string(count) +
                        " exceeds the budget of " + std::to_string(budget));

  auto out = out_edges(a);
  std::vector<char> fin = state_mask(a.final, a.num_states);
  std::vector<int> word(n, 0);
  std::vector<std::vector<char>> layer(n + 1, std::vector<char>(a.num_states, 0));
  for (;;) {
    // subset simulation of the current word
    layer[0].assign(a.num_states, 0);
    for (int q : a.initial) layer[0][q] = 1;
    for (int i = 0; i < n; ++i) {
      layer[i + 1].assign(a.num_states, 0);
      for (int q = 0; q < a.num_states; ++q) {
        if (!layer[i][q]) continue;
        for (auto [sym, to] : out[q])
          if (sym == word[i]) layer[i + 1][to] = 1;
      }
    }
    bool ok = false;
    for (int q = 0; q < a.num_states && !ok; ++q) ok = layer[n][q] && fin[q];
    if (ok) {
      SymbolString s;
      s.reserve(n);
      for (int sym : word) s.push_back(a.alphabet[sym]);
      sample.strings.push_back(std::move(s));
    }
    // odometer
    int pos = n - 1;
    while (pos >= 0 && word[pos] == nsym - 1) word[pos--] = 0;
    if (pos < 0) break;
    ++word[pos];
  }
  std::sort(sample.strings.begin(), sample.strings.end());
  return sample;
}

Nfa nfa_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw QueryParseError(std::string("automaton JSON: ") + e.what());
  }
  if (!j.is_object()) throw QueryParseError("automaton JSON: expected an object");
  for (const char* key : {"alphabet", "states", "initial", "final", "transitions"})
    if (!j.contains(key) || !j[key].is_array())
      throw QueryParseError(std::string("automaton JSON: missing array \"") + key + "\"");

  Nfa a;
  for (const auto& s : j["alphabet"]) {
    std::string name = s.get<std::string>();
    if (name == kWildcardSymbol)
      throw DataError("\"PHI\" is reserved and must not be declared in the alphabet");
    if (a.symbol_index(name) >= 0) throw DataError("duplicate alphabet symbol \"" + name + "\"");
    a.add_symbol(name);
  }
  std::map<std::string, int> state_id;
  for (const auto& s : j["states"]) {
    std::string name = s.get<std::string>();
    if (!state_id.emplace(name, a.num_states).second)
      throw DataError("duplicate state \"" + name + "\"");
    a.state_names.push_back(name);
    ++a.num_states;
  }
  auto lookup_state = [&](const std::string& name) {
    auto it = state_id.find(name);
    if (it == state_id.end()) throw DataError("undeclared state \"" + name + "\"");
    return it->second;
  };
  for (const auto& s : j["initial"]) a.initial.push_back(lookup_state(s.get<std::string>()));
  for (const auto& s : j["final"]) a.final.push_back(lookup_state(s.get<std::string>()));
  for (const auto& t : j["transitions"]) {
    if (!t.is_array() || t.size() != 3)
      throw QueryParseError("automaton JSON: transitions must be [state,symbol,state] triples");
    std::string sym = t[1].get<std::string>();
    int sidx = sym == kWildcardSymbol ? a.add_symbol(sym) : a.symbol_index(sym);
    if (sidx < 0) throw DataError("transition uses undeclared symbol \"" + sym + "\"");
    a.transitions.push_back({lookup_state(t[0].get<std::string>()), sidx,
                             lookup_state(t[2].get<std::string>())});
  }
  sort_unique(a.initial);
  sort_unique(a.final);
  a.validate();
  return a;
}

std::string nfa_to_json(const Nfa& a) {
  nlohmann::json j;
  j["alphabet"] = nlohmann::json::array();
  for (int i = 0; i < static_cast<int>(a.alphabet.size()); ++i)
    if (i != a.phi) j["alphabet"].push_back(a.alphabet[i]);
  auto name = [&](int q) {
    return q < static_cast<int>(a.state_names.size()) ? a.state_names[q]
                                                      : "s" + std::to_string(q);
  };
  j["states"] = nlohmann::json::array();
  for (int q = 0; q < a.num_states; ++q) j["states"].push_back(name(q));
  j["initial"] = nlohmann::json::array();
  for (int q : a.initial) j["initial"].push_back(name(q));
  j["final"] = nlohmann::json::array();
  for (int q : a.final) j["final"].push_back(name(q));
  j["transitions"] = nlohmann::json::array();
  for (const Transition& t : a.transitions)
    j["transitions"].push_back({name(t.from), a.alphabet[t.symbol], name(t.to)});
  return j.dump();
}

}  // namespace seqsim
