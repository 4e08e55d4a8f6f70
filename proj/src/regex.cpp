#include "seqsim/regex.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace seqsim {

namespace {

void print_node(const Regex& f, int id, std::string& out) {
  const RegexNode& nd = f.nodes[id];
  switch (nd.op) {
    case RegexOp::Symbol: out += nd.symbol; break;
    case RegexOp::Alt:
      out += "(";
      print_node(f, nd.lhs, out);
      out += " | ";
      print_node(f, nd.rhs, out);
      out += ")";
      break;
    case RegexOp::Concat:
      out += "(";
      print_node(f, nd.lhs, out);
      out += " ";
      print_node(f, nd.rhs, out);
      out += ")";
      break;
    case RegexOp::Star:
      out += "(";
      print_node(f, nd.lhs, out);
      out += ")*";
      break;
  }
}

}  // namespace

std::string Regex::str() const {
  if (root < 0) return "";
  std::string out;
  print_node(*this, root, out);
  return out;
}

RegexBuilder::RegexBuilder(std::vector<std::string> alphabet) {
  f_.alphabet = std::move(alphabet);
}
int RegexBuilder::symbol(std::string name) {
  f_.nodes.push_back({RegexOp::Symbol, std::move(name), -1, -1});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int RegexBuilder::alternation(int g, int h) {
  f_.nodes.push_back({RegexOp::Alt, "", g, h});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int RegexBuilder::concat(int g, int h) {
  f_.nodes.push_back({RegexOp::Concat, "", g, h});
  return static_cast<int>(f_.nodes.size()) - 1;
}
int RegexBuilder::star(int g) {
  f_.nodes.push_back({RegexOp::Star, "", g, -1});
  return static_cast<int>(f_.nodes.size()) - 1;
}
Regex RegexBuilder::take(int root) {
  f_.root = root;
  return std::move(f_);
}

// ---------------------------------------------------------------- parsing

namespace {

struct RegexToken {
  enum Kind { Ident, Alt, Star, LParen, RParen, End };
  Kind kind;
  std::string text;
  size_t pos;
};

std::vector<RegexToken> lex_regex(const std::string& text) {
  std::vector<RegexToken> toks;
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
      toks.push_back({RegexToken::Ident, text.substr(start, i - start), start});
      continue;
    }
    ++i;
    switch (c) {
      case '|': toks.push_back({RegexToken::Alt, "|", start}); break;
      case '*': toks.push_back({RegexToken::Star, "*", start}); break;
      case '(': toks.push_back({RegexToken::LParen, "(", start}); break;
      case ')': toks.push_back({RegexToken::RParen, ")", start}); break;
      default:
        throw QueryParseError("regex: unexpected character '" + std::string(1, c) +
                              "' at position " + std::to_string(start));
    }
  }
  toks.push_back({RegexToken::End, "", text.size()});
  return toks;
}

class RegexParser {
 public:
  RegexParser(const std::string& text, std::span<const std::string> atoms)
      : toks_(lex_regex(text)), atoms_(atoms) {
    f_.alphabet.assign(atoms.begin(), atoms.end());
  }

  Regex parse() {
    int root = parse_alt();
    if (peek().kind != RegexToken::End)
      throw QueryParseError("regex: trailing input at position " +
                            std::to_string(peek().pos));
    f_.root = root;
    return std::move(f_);
  }

 private:
  const RegexToken& peek() const { return toks_[pos_]; }
  int add(RegexNode nd) {
    f_.nodes.push_back(std::move(nd));
    return static_cast<int>(f_.nodes.size()) - 1;
  }

  int parse_alt() {
    int lhs = parse_concat();
    while (peek().kind == RegexToken::Alt) {
      ++pos_;
      int rhs = parse_concat();
      lhs = add({RegexOp::Alt, "", lhs, rhs});
    }
    return lhs;
  }
  int parse_concat() {
    int lhs = parse_star();
    while (peek().kind == RegexToken::Ident || peek().kind == RegexToken::LParen) {
      int rhs = parse_star();
      lhs = add({RegexOp::Concat, "", lhs, rhs});
    }
    return lhs;
  }
  int parse_star() {
    int e = parse_primary();
    while (peek().kind == RegexToken::Star) {
      ++pos_;
      e = add({RegexOp::Star, "", e, -1});
    }
    return e;
  }
  int parse_primary() {
    RegexToken t = peek();
    if (t.kind == RegexToken::LParen) {
      ++pos_;
      int inner = parse_alt();
      if (peek().kind != RegexToken::RParen)
        throw QueryParseError("regex: expected ')' at position " +
                              std::to_string(peek().pos));
      ++pos_;
      return inner;
    }
    if (t.kind == RegexToken::Ident) {
      ++pos_;
      if (std::find(atoms_.begin(), atoms_.end(), t.text) == atoms_.end())
        throw QueryParseError("regex: undeclared symbol \"" + t.text +
                              "\" at position " + std::to_string(t.pos));
      return add({RegexOp::Symbol, t.text, -1, -1});
    }
    throw QueryParseError("regex: expected a symbol or '(' at position " +
                          std::to_string(t.pos));
  }

  std::vector<RegexToken> toks_;
  size_t pos_ = 0;
  std::span<const std::string> atoms_;
  Regex f_;
};

}  // namespace

Regex parse_regex(const std::string& text, std::span<const std::string> atoms) {
  return RegexParser(text, atoms).parse();
}

// ------------------------------------------------- position automaton

namespace {

struct GlushkovSets {
  std::vector<char> nullable;
  std::vector<std::set<int>> first, last;  // per node, sets of positions
};

void glushkov(const Regex& f, int id, GlushkovSets& g,
              std::vector<std::set<int>>& follow, std::vector<int>& pos_of_node) {
  const RegexNode& nd = f.nodes[id];
  switch (nd.op) {
    case RegexOp::Symbol: {
      int p = pos_of_node[id];
      g.nullable[id] = 0;
      g.first[id] = {p};
      g.last[id] = {p};
      break;
    }
    case RegexOp::Alt:
      glushkov(f, nd.lhs, g, follow, pos_of_node);
      glushkov(f, nd.rhs, g, follow, pos_of_node);
      g.nullable[id] = g.nullable[nd.lhs] || g.nullable[nd.rhs];
      g.first[id] = g.first[nd.lhs];
      g.first[id].insert(g.first[nd.rhs].begin(), g.first[nd.rhs].end());
      g.last[id] = g.last[nd.lhs];
      g.last[id].insert(g.last[nd.rhs].begin(), g.last[nd.rhs].end());
      break;
    case RegexOp::Concat:
      glushkov(f, nd.lhs, g, follow, pos_of_node);
      glushkov(f, nd.rhs, g, follow, pos_of_node);
      g.nullable[id] = g.nullable[nd.lhs] && g.nullable[nd.rhs];
      g.first[id] = g.first[nd.lhs];
      if (g.nullable[nd.lhs])
        g.first[id].insert(g.first[nd.rhs].begin(), g.first[nd.rhs].end());
      g.last[id] = g.last[nd.rhs];
      if (g.nullable[nd.rhs])
        g.last[id].insert(g.last[nd.lhs].begin(), g.last[nd.lhs].end());
      for (int p : g.last[nd.lhs])
        follow[p].insert(g.first[nd.rhs].begin(), g.first[nd.rhs].end());
      break;
    case RegexOp::Star:
      glushkov(f, nd.lhs, g, follow, pos_of_node);
      g.nullable[id] = 1;
      g.first[id] = g.first[nd.lhs];
      g.last[id] = g.last[nd.lhs];
      for (int p : g.last[nd.lhs])
        follow[p].insert(g.first[nd.lhs].begin(), g.first[nd.lhs].end());
      break;
  }
}

void assign_positions(const Regex& f, int id, std::vector<int>& pos_of_node,
                      std::vector<std::string>& sym_of_pos) {
  const RegexNode& nd = f.nodes[id];
  if (nd.op == RegexOp::Symbol) {
    pos_of_node[id] = static_cast<int>(sym_of_pos.size());
    sym_of_pos.push_back(nd.symbol);
    return;
  }
  if (nd.lhs >= 0) assign_positions(f, nd.lhs, pos_of_node, sym_of_pos);
  if (nd.rhs >= 0) assign_positions(f, nd.rhs, pos_of_node, sym_of_pos);
}

}  // namespace

Nfa regex_to_nfa(const Regex& f) {
  if (f.root < 0) throw UsageError("regex_to_nfa: empty expression");

  Nfa a;
  for (const std::string& s : f.alphabet) a.add_symbol(s);

  std::vector<int> pos_of_node(f.nodes.size(), -1);
  std::vector<std::string> sym_of_pos;
  assign_positions(f, f.root, pos_of_node, sym_of_pos);
  int npos = static_cast<int>(sym_of_pos.size());

  GlushkovSets g;
  g.nullable.assign(f.nodes.size(), 0);
  g.first.assign(f.nodes.size(), {});
  g.last.assign(f.nodes.size(), {});
  std::vector<std::set<int>> follow(npos);
  glushkov(f, f.root, g, follow, pos_of_node);

  auto sym_id = [&](int p) {
    int idx = a.symbol_index(sym_of_pos[p]);
    if (idx < 0) idx = a.add_symbol(sym_of_pos[p]);
    return idx;
  };

  a.num_states = npos + 1;  // 0 is the start, position p is state p+1
  for (int p : g.first[f.root]) a.transitions.push_back({0, sym_id(p), p + 1});
  for (int p = 0; p < npos; ++p)
    for (int q : follow[p]) a.transitions.push_back({p + 1, sym_id(q), q + 1});
  a.initial = {0};
  if (g.nullable[f.root]) a.final.push_back(0);
  for (int p : g.last[f.root]) a.final.push_back(p + 1);
  std::sort(a.final.begin(), a.final.end());
  a.final.erase(std::unique(a.final.begin(), a.final.end()), a.final.end());
  return a;
}

DistanceResult syndist_regex(const SimTable& table, std::span<const int> d,
                             const Regex& f, NormIndex k) {
  return distance1(table, d, regex_to_nfa(f), k);
}

DistanceResult semdist2_regex(const SimTable& table, std::span<const int> d,
                              const Regex& f, NormIndex k,
                              const AutomatonBudget& budget) {
  return distance2(table, d, regex_to_nfa(f), k, budget);
}

}  // namespace seqsim
