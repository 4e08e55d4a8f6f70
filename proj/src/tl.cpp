#include "seqsim/tl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "seqsim/oracle.hpp"

namespace seqsim {

namespace {

void collect_atoms(const TlFormula& f, int id, std::set<std::string>& out) {
  if (id < 0) return;
  const TlNode& nd = f.nodes[id];
  if (nd.op == TlOp::Atom) out.insert(nd.atom);
  collect_atoms(f, nd.lhs, out);
  collect_atoms(f, nd.rhs, out);
}

const char* op_text(TlOp op) {
  switch (op) {
    case TlOp::And: return " & ";
    case TlOp::Or: return " | ";
    case TlOp::Until: return " U ";
    default: return "";
  }
}

void print_node(const TlFormula& f, int id, std::string& out) {
  const TlNode& nd = f.nodes[id];
  switch (nd.op) {
    case TlOp::Atom: out += nd.atom; break;
    case TlOp::True: out += "true"; break;
    case TlOp::False: out += "false"; break;
    case TlOp::Not:
      out += "!";
      out += "(";
      print_node(f, nd.lhs, out);
      out += ")";
      break;
    case TlOp::Next:
      out += "X(";
      print_node(f, nd.lhs, out);
      out += ")";
      break;
    default:
      out += "(";
      print_node(f, nd.lhs, out);
      out += op_text(nd.op);
      print_node(f, nd.rhs, out);
      out += ")";
  }
}

}  // namespace

std::vector<std::string> TlFormula::atoms() const {
  std::set<std::string> names;
  collect_atoms(*this, root, names);
  return {names.begin(), names.end()};
}

bool TlFormula::is_nnf() const {
  for (const TlNode& nd : nodes)
    if (nd.op == TlOp::Not && nodes[nd.lhs].op != TlOp::Atom) return false;
  return true;
}

std::string TlFormula::str() const {
  if (root < 0) return "";
  std::string out;
  print_node(*this, root, out);
  return out;
}

int TlBuilder::atom(std::string name) {
  f_.nodes.push_back({TlOp::Atom, std::move(name), -1, -1});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int TlBuilder::constant(bool value) {
  f_.nodes.push_back({value ? TlOp::True : TlOp::False, "", -1, -1});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int TlBuilder::negation(int g) {
  f_.nodes.push_back({TlOp::Not, "", g, -1});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int TlBuilder::conjunction(int g, int h) {
  f_.nodes.push_back({TlOp::And, "", g, h});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int TlBuilder::disjunction(int g, int h) {
  f_.nodes.push_back({TlOp::Or, "", g, h});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int TlBuilder::next(int g) {
  f_.nodes.push_back({TlOp::Next, "", g, -1});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int TlBuilder::until(int g, int h) {
  f_.nodes.push_back({TlOp::Until, "", g, h});
  return static_cast<int>(f_.nodes.size()) - 1;
}
TlFormula TlBuilder::take(int root) {
  f_.root = root;
  return std::move(f_);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Ident, True, False, UntilOp, NextOp, Not, And, Or, LParen, RParen, End };
  Kind kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex_tl(const std::string& text) {
  std::vector<Token> toks;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      std::string word = text.substr(start, i - start);
      if (word == "true")
        toks.push_back({Token::True, word, start});
      else if (word == "false")
        toks.push_back({Token::False, word, start});
      else if (word == "U")
        toks.push_back({Token::UntilOp, word, start});
      else if (word == "X")
        toks.push_back({Token::NextOp, word, start});
      else
        toks.push_back({Token::Ident, word, start});
      continue;
    }
    ++i;
    switch (c) {
      case '!': toks.push_back({Token::Not, "!", start}); break;
      case '&': toks.push_back({Token::And, "&", start}); break;
      case '|': toks.push_back({Token::Or, "|", start}); break;
      case '(': toks.push_back({Token::LParen, "(", start}); break;
      case ')': toks.push_back({Token::RParen, ")", start}); break;
      default:
        throw QueryParseError("TL: unexpected character '" + std::string(1, c) +
                              "' at position " + std::to_string(start));
    }
  }
  toks.push_back({Token::End, "", text.size()});
  return toks;
}

class TlParser {
 public:
  TlParser(const std::string& text, std::span<const std::string> props)
      : toks_(lex_tl(text)), props_(props) {}

  TlFormula parse() {
    int root = parse_or();
    expect(Token::End, "end of input");
    f_.root = root;
    return std::move(f_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token advance() { return toks_[pos_++]; }
  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k)
      throw QueryParseError("TL: expected " + std::string(what) + " at position " +
                            std::to_string(peek().pos));
    ++pos_;
  }
  int add(TlNode nd) {
    f_.nodes.push_back(std::move(nd));
    return static_cast<int>(f_.nodes.size()) - 1;
  }

  int parse_or() {
    int lhs = parse_and();
    while (peek().kind == Token::Or) {
      advance();
      int rhs = parse_and();
      lhs = add({TlOp::Or, "", lhs, rhs});
    }
    return lhs;
  }
  int parse_and() {
    int lhs = parse_until();
    while (peek().kind == Token::And) {
      advance();
      int rhs = parse_until();
      lhs = add({TlOp::And, "", lhs, rhs});
    }
    return lhs;
  }
  int parse_until() {  // right-associative
    int lhs = parse_unary();
    if (peek().kind == Token::UntilOp) {
      advance();
      int rhs = parse_until();
      return add({TlOp::Until, "", lhs, rhs});
    }
    return lhs;
  }
  int parse_unary() {
    if (peek().kind == Token::Not) {
      advance();
      return add({TlOp::Not, "", parse_unary(), -1});
    }
    if (peek().kind == Token::NextOp) {
      advance();
      return add({TlOp::Next, "", parse_unary(), -1});
    }
    return parse_primary();
  }
  int parse_primary() {
    Token t = peek();
    switch (t.kind) {
      case Token::True: advance(); return add({TlOp::True, "", -1, -1});
      case Token::False: advance(); return add({TlOp::False, "", -1, -1});
      case Token::LParen: {
        advance();
        int inner = parse_or();
        expect(Token::RParen, "')'");
        return inner;
      }
      case Token::Ident: {
        advance();
        if (std::find(props_.begin(), props_.end(), t.text) == props_.end())
          throw QueryParseError("TL: undeclared proposition \"" + t.text +
                                "\" at position " + std::to_string(t.pos));
        return add({TlOp::Atom, t.text, -1, -1});
      }
      default:
        throw QueryParseError("TL: expected a formula at position " +
                              std::to_string(t.pos));
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::span<const std::string> props_;
  TlFormula f_;
};

}  // namespace

TlFormula parse_tl(const std::string& text, std::span<const std::string> props) {
  return TlParser(text, props).parse();
}

// ----------------------------------------------------------- satisfaction

namespace {

int prop_bit(std::span<const std::string> props, const std::string& name) {
  auto it = std::find(props.begin(), props.end(), name);
  if (it == props.end()) throw DataError("proposition \"" + name + "\" not in scope");
  return static_cast<int>(it - props.begin());
}

bool sat_at(const TlFormula& f, int id, std::span<const PropWorld> s, int i,
            std::span<const std::string> props) {
  const TlNode& nd = f.nodes[id];
  int n = static_cast<int>(s.size());
  switch (nd.op) {
    case TlOp::Atom: return (s[i] >> prop_bit(props, nd.atom)) & 1;
    case TlOp::True: return true;
    case TlOp::False: return false;
    case TlOp::Not: return !sat_at(f, nd.lhs, s, i, props);
    case TlOp::And:
      return sat_at(f, nd.lhs, s, i, props) && sat_at(f, nd.rhs, s, i, props);
    case TlOp::Or:
      return sat_at(f, nd.lhs, s, i, props) || sat_at(f, nd.rhs, s, i, props);
    case TlOp::Next: return i + 1 < n && sat_at(f, nd.lhs, s, i + 1, props);
    case TlOp::Until:
      for (int j = i; j < n; ++j) {
        if (sat_at(f, nd.rhs, s, j, props)) return true;
        if (!sat_at(f, nd.lhs, s, j, props)) return false;
      }
      return false;
  }
  return false;
}

}  // namespace

bool satisfies(const TlFormula& f, std::span<const PropWorld> trace,
               std::span<const std::string> props) {
  if (trace.empty()) throw UsageError("satisfies: empty trace");
  if (f.root < 0) throw UsageError("satisfies: empty formula");
  return sat_at(f, f.root, trace, 0, props);
}

// ------------------------------------------------------ syntactic distance

namespace {

void postorder(const TlFormula& f, int id, std::vector<int>& order,
               std::vector<char>& seen) {
  if (seen[id]) return;
  seen[id] = 1;
  const TlNode& nd = f.nodes[id];
  if (nd.lhs >= 0) postorder(f, nd.lhs, order, seen);
  if (nd.rhs >= 0) postorder(f, nd.rhs, order, seen);
  order.push_back(id);
}

}  // namespace

DistanceResult syndist_tl(const SimTable& table, std::span<const int> d,
                          const TlFormula& f, NormIndex norm) {
  int n = static_cast<int>(d.size());
  if (n == 0) throw UsageError("syndist_tl: empty sequence");
  if (f.root < 0) throw UsageError("syndist_tl: empty formula");

  std::vector<int> order;
  std::vector<char> seen(f.nodes.size(), 0);
  postorder(f, f.root, order, seen);

  std::vector<std::vector<double>> val(f.nodes.size());
  for (int id : order) {
    const TlNode& nd = f.nodes[id];
    std::vector<double>& v = val[id];
    v.assign(n, 0.0);
    switch (nd.op) {
      case TlOp::Atom: {
        ResolvedSymbol sym = table.resolve(nd.atom);
        for (int i = 0; i < n; ++i) v[i] = simval_cost(table, d[i], sym);
        break;
      }
      case TlOp::True: break;
      case TlOp::False: v.assign(n, 1.0); break;
      case TlOp::Not: {
        // negated atoms read the given (or derived) literal similarity; a
        // general negation flips the value, with "impossible" scoring 0
        if (f.nodes[nd.lhs].op == TlOp::Atom) {
          ResolvedSymbol sym = table.resolve("!" + f.nodes[nd.lhs].atom);
          for (int i = 0; i < n; ++i) v[i] = simval_cost(table, d[i], sym);
        } else {
          const std::vector<double>& g = val[nd.lhs];
          for (int i = 0; i < n; ++i) v[i] = g[i] == kInfinity ? 0.0 : 1.0 - g[i];
        }
        break;
      }
      case TlOp::And: {
        const std::vector<double>&g = val[nd.lhs], &h = val[nd.rhs];
        for (int i = 0; i < n; ++i) v[i] = std::max(g[i], h[i]);
        break;
      }
      case TlOp::Or: {
        const std::vector<double>&g = val[nd.lhs], &h = val[nd.rhs];
        for (int i = 0; i < n; ++i) v[i] = std::min(g[i], h[i]);
        break;
      }
      case TlOp::Next: {
        const std::vector<double>& g = val[nd.lhs];
        for (int i = 0; i < n - 1; ++i) v[i] = g[i + 1];
        v[n - 1] = kInfinity;
        break;
      }
      case TlOp::Until: {
        const std::vector<double>&g = val[nd.lhs], &h = val[nd.rhs];
        if (norm.is_infinite()) {
          v[n - 1] = h[n - 1];
          for (int i = n - 2; i >= 0; --i)
            v[i] = std::min(h[i], std::max(g[i], v[i + 1]));
        } else {
          int k = norm.k();
          for (int i = 0; i < n; ++i) {
            double best = kInfinity, sum = 0.0;
            for (int j = i; j < n; ++j) {
              double hk = kth_power(h[j], k);
              if (sum < kInfinity && hk < kInfinity) {
                double y = kth_root((sum + hk) / static_cast<double>(j - i + 1), k);
                best = std::min(best, y);
              }
              sum += kth_power(g[j], k);
            }
            v[i] = best;
          }
        }
        break;
      }
    }
  }
  return make_distance_result(val[f.root][0]);
}

// ---------------------------------------------------------------- expansion

std::vector<int> expn_states(std::span<const int> d, int m) {
  if (m < 1) throw UsageError("expn_states: proposition count must be positive");
  std::vector<int> out;
  out.reserve(d.size() * m);
  for (int state : d)
    for (int j = 0; j < m; ++j) out.push_back(state);
  return out;
}

SymbolString expn_world_string(std::span<const PropWorld> s,
                               std::span<const std::string> props) {
  SymbolString out;
  out.reserve(s.size() * props.size());
  for (PropWorld w : s)
    for (size_t j = 0; j < props.size(); ++j)
      out.push_back((w >> j) & 1 ? props[j] : "!" + props[j]);
  return out;
}

std::string world_symbol_name(PropWorld w, std::span<const std::string> props) {
  std::string name = "{";
  bool first = true;
  for (size_t j = 0; j < props.size(); ++j) {
    if (!((w >> j) & 1)) continue;
    if (!first) name += ",";
    name += props[j];
    first = false;
  }
  return name + "}";
}

// --------------------------------------------------- automaton translation

namespace {

// Internal negation-normal form with the weak operators needed to dualize
// strong next and until over finite traces.
enum class LOp { Lit, True, False, And, Or, Next, WeakNext, Until, Release };

struct LtlfArena {
  struct Node {
    LOp op;
    int a = 0, b = 0;  // Lit: (bit, negated); binary: (lhs, rhs); unary: (child, 0)
  };
  std::vector<Node> nodes;
  std::map<std::tuple<LOp, int, int>, int> interned;

  int intern(LOp op, int a, int b) {
    auto key = std::make_tuple(op, a, b);
    auto it = interned.find(key);
    if (it != interned.end()) return it->second;
    nodes.push_back({op, a, b});
    int id = static_cast<int>(nodes.size()) - 1;
    interned.emplace(key, id);
    return id;
  }
};

int to_nnf(const TlFormula& f, int id, bool neg, LtlfArena& arena,
           std::span<const std::string> props) {
  const TlNode& nd = f.nodes[id];
  switch (nd.op) {
    case TlOp::Atom:
      return arena.intern(LOp::Lit, prop_bit(props, nd.atom), neg ? 1 : 0);
    case TlOp::True:
      return arena.intern(neg ? LOp::False : LOp::True, 0, 0);
    case TlOp::False:
      return arena.intern(neg ? LOp::True : LOp::False, 0, 0);
    case TlOp::Not:
      return to_nnf(f, nd.lhs, !neg, arena, props);
    case TlOp::And: {
      int l = to_nnf(f, nd.lhs, neg, arena, props);
      int r = to_nnf(f, nd.rhs, neg, arena, props);
      return arena.intern(neg ? LOp::Or : LOp::And, l, r);
    }
    case TlOp::Or: {
      int l = to_nnf(f, nd.lhs, neg, arena, props);
      int r = to_nnf(f, nd.rhs, neg, arena, props);
      return arena.intern(neg ? LOp::And : LOp::Or, l, r);
    }
    case TlOp::Next:
      return arena.intern(neg ? LOp::WeakNext : LOp::Next,
                          to_nnf(f, nd.lhs, neg, arena, props), 0);
    case TlOp::Until: {
      int l = to_nnf(f, nd.lhs, neg, arena, props);
      int r = to_nnf(f, nd.rhs, neg, arena, props);
      return arena.intern(neg ? LOp::Release : LOp::Until, l, r);
    }
  }
  throw UsageError("to_nnf: malformed formula");
}

// Obligation sets with a "may the trace stop here" flag: a branch of the
// decomposition is closed by the letter iff its strong-next set is empty.
struct TableauState {
  std::vector<int> obligations;
  bool can_end = false;

  friend auto operator<=>(const TableauState&, const TableauState&) = default;
};

// All ways the letter sigma can discharge the obligation set: expansion laws
//   g U h  ==  h  or  (g and X(g U h))
//   g R h  ==  h and (g or WX(g R h))
void decompose(const LtlfArena& arena, std::vector<int> stack, PropWorld sigma,
               std::vector<int> strong, std::vector<int> weak,
               std::set<TableauState>& out) {
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const LtlfArena::Node& nd = arena.nodes[id];
    switch (nd.op) {
      case LOp::Lit: {
        bool holds = (sigma >> nd.a) & 1;
        if (holds == (nd.b != 0)) return;  // branch dies
        break;
      }
      case LOp::True: break;
      case LOp::False: return;
      case LOp::And:
        stack.push_back(nd.a);
        stack.push_back(nd.b);
        break;
      case LOp::Or: {
        auto left = stack;
        left.push_back(nd.a);
        decompose(arena, std::move(left), sigma, strong, weak, out);
        stack.push_back(nd.b);
        break;
      }
      case LOp::Next: strong.push_back(nd.a); break;
      case LOp::WeakNext: weak.push_back(nd.a); break;
      case LOp::Until: {
        auto now = stack;
        now.push_back(nd.b);
        decompose(arena, std::move(now), sigma, strong, weak, out);
        stack.push_back(nd.a);
        strong.push_back(id);
        break;
      }
      case LOp::Release: {
        stack.push_back(nd.b);
        auto hold = stack;
        hold.push_back(nd.a);
        decompose(arena, std::move(hold), sigma, strong, weak, out);
        weak.push_back(id);
        break;
      }
    }
  }
  TableauState next;
  next.can_end = strong.empty();
  next.obligations = std::move(strong);
  next.obligations.insert(next.obligations.end(), weak.begin(), weak.end());
  std::sort(next.obligations.begin(), next.obligations.end());
  next.obligations.erase(
      std::unique(next.obligations.begin(), next.obligations.end()),
      next.obligations.end());
  out.insert(std::move(next));
}

constexpr int kMaxTableauStates = 100000;

}  // namespace

Nfa tl_to_nfa(const TlFormula& f, std::span<const std::string> props) {
  if (f.root < 0) throw UsageError("tl_to_nfa: empty formula");
  int m = static_cast<int>(props.size());
  if (m > kMaxTlProps)
    throw ResourceError("tl_to_nfa: " + std::to_string(m) + " propositions exceed the cap of " +
                        std::to_string(kMaxTlProps));
  for (const std::string& atom : f.atoms()) prop_bit(props, atom);

  LtlfArena arena;
  int root = to_nnf(f, f.root, false, arena, props);
  int letters = 1 << m;

  Nfa a;
  for (PropWorld w = 0; w < static_cast<PropWorld>(letters); ++w)
    a.add_symbol(world_symbol_name(w, props));

  std::map<TableauState, int> ids;
  std::vector<TableauState> states;
  auto intern_state = [&](TableauState s) {
    auto [it, inserted] = ids.emplace(std::move(s), static_cast<int>(states.size()));
    if (inserted) {
      states.push_back(it->first);
      if (static_cast<int>(states.size()) > kMaxTableauStates)
        throw ResourceError("tl_to_nfa: tableau exceeded " +
                            std::to_string(kMaxTableauStates) + " states");
    }
    return it->second;
  };

  intern_state({{root}, false});
  for (size_t cur = 0; cur < states.size(); ++cur) {
    TableauState state = states[cur];
    for (PropWorld sigma = 0; sigma < static_cast<PropWorld>(letters); ++sigma) {
      std::set<TableauState> branches;
      decompose(arena, state.obligations, sigma, {}, {}, branches);
      for (const TableauState& b : branches) {
        int to = intern_state(b);
        a.transitions.push_back(
            {static_cast<int>(cur), static_cast<int>(sigma), to});
      }
    }
  }

  a.num_states = static_cast<int>(states.size());
  a.initial = {0};
  for (int q = 0; q < a.num_states; ++q)
    if (states[q].can_end) a.final.push_back(q);
  return trim(a);
}

Nfa literal_expand_nfa(const Nfa& a, std::span<const std::string> props) {
  int m = static_cast<int>(props.size());
  if (m < 1) throw UsageError("literal_expand_nfa: proposition count must be positive");
  if (a.alphabet.size() != static_cast<size_t>(1) << m)
    throw UsageError("literal_expand_nfa: expected a 2^m world alphabet");

  Nfa e;
  for (int j = 0; j < m; ++j) {
    e.add_symbol(props[j]);
    e.add_symbol("!" + props[j]);
  }
  auto literal = [&](PropWorld w, int j) { return 2 * j + (((w >> j) & 1) ? 0 : 1); };

  e.num_states = a.num_states;
  for (const Transition& t : a.transitions) {
    PropWorld w = static_cast<PropWorld>(t.symbol);
    int prev = t.from;
    for (int j = 0; j < m - 1; ++j) {
      int chain = e.num_states++;
      e.transitions.push_back({prev, literal(w, j), chain});
      prev = chain;
    }
    e.transitions.push_back({prev, literal(w, m - 1), t.to});
  }
  e.initial = a.initial;
  e.final = a.final;
  return e;
}

// --------------------------------------------------------- semantic routes

namespace {

// With no propositions there is exactly one trace per length; the expansion
// of everything is the empty string, so the distance is 0 or +inf.
DistanceResult semdist_no_props(std::span<const int> d, const TlFormula& f) {
  int n = static_cast<int>(d.size());
  if (n == 0) return make_distance_result(kInfinity);
  std::vector<PropWorld> trace(n, 0);
  std::vector<std::string> no_props;
  return make_distance_result(satisfies(f, trace, no_props) ? 0.0 : kInfinity);
}

}  // namespace

DistanceResult semdist1_tl(const SimTable& table, std::span<const int> d,
                           const TlFormula& f, NormIndex k) {
  std::vector<std::string> props = f.atoms();
  if (props.empty()) return semdist_no_props(d, f);
  Nfa worlds = tl_to_nfa(f, props);
  Nfa psi = literal_expand_nfa(worlds, props);
  std::vector<int> dd = expn_states(d, static_cast<int>(props.size()));
  return distance1(table, dd, psi, k);
}

DistanceResult semdist2_tl(const SimTable& table, std::span<const int> d,
                           const TlFormula& f, NormIndex k) {
  std::vector<std::string> props = f.atoms();
  if (props.empty()) return semdist_no_props(d, f);
  int m = static_cast<int>(props.size());
  int n = static_cast<int>(d.size());
  if (m > 2 || n > 4)
    throw ResourceError("semdist2_tl: capped at 2 propositions and sequence length 4 (got m=" +
                        std::to_string(m) + ", n=" + std::to_string(n) + ")");
  if (n == 0) return make_distance_result(kInfinity);

  std::vector<std::vector<PropWorld>> models = oracle_tl_models(f, props, n);
  if (models.empty()) return make_distance_result(kInfinity);

  LanguageSample sample;
  sample.length = n * m;
  for (const auto& s : models) sample.strings.push_back(expn_world_string(s, props));
  std::sort(sample.strings.begin(), sample.strings.end());

  // closure per position over that position's literal pair {P_j, !P_j}
  std::vector<std::vector<std::string>> delta_at(sample.length);
  for (int p = 0; p < sample.length; ++p)
    delta_at[p] = {props[p % m], "!" + props[p % m]};
  LanguageSample maxi = oracle_maximal(oracle_closure_positional(sample, delta_at));

  std::vector<int> dd = expn_states(d, m);
  return make_distance_result(oracle_distance1(table, dd, maxi, k).get());
}

}  // namespace seqsim
