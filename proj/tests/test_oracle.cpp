#include <set>

#include "doctest.h"
#include "seqsim/oracle.hpp"
#include "support.hpp"

using namespace seqsim;
using namespace testsupport;

namespace {

LanguageSample sample_of(int length, std::vector<SymbolString> strings) {
  LanguageSample s;
  s.length = length;
  std::sort(strings.begin(), strings.end());
  s.strings = std::move(strings);
  return s;
}

std::set<SymbolString> as_set(const LanguageSample& s) {
  return {s.strings.begin(), s.strings.end()};
}

}  // namespace

TEST_CASE("oracle_distance1 basics") {
  SimTable t = golden_table();
  std::vector<int> d = {0, 1};
  auto sample = sample_of(2, {{"a", "b"}, {"b", "b"}});
  CHECK(oracle_distance1(t, d, sample, NormIndex::finite(1)).get() ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(oracle_distance1(t, d, sample_of(2, {}), NormIndex::finite(1)).is_plus_infinity());
  CHECK(oracle_distance1(t, d, sample_of(2, {{"PHI", "PHI"}}), NormIndex::finite(1)).get() ==
        0.0);
}

TEST_CASE("oracle_closure adds dominated wildcards") {
  auto base = sample_of(2, {{"a", "b"}, {"b", "b"}});
  auto closed = oracle_closure(base, {"a", "b"});
  CHECK(as_set(closed) ==
        std::set<SymbolString>{{"a", "b"}, {"b", "b"}, {"PHI", "b"}});

  // literal pairs: {aP, !P P} over the alphabet {P, !P} closes to add PHI P
  auto lits = sample_of(2, {{"P", "P"}, {"!P", "P"}});
  auto closed_lits = oracle_closure(lits, {"P", "!P"});
  CHECK(closed_lits.strings.size() == 3);
  CHECK(as_set(closed_lits).count({"PHI", "P"}) == 1);

  // singleton languages never close
  auto single = sample_of(2, {{"a", "b"}});
  CHECK(as_set(oracle_closure(single, {"a", "b"})) == as_set(single));
}

TEST_CASE("oracle_closure cascades to a fixpoint") {
  // all four strings of length 2 close to everything including PHI PHI
  auto base = sample_of(2, {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}});
  auto closed = oracle_closure(base, {"a", "b"});
  CHECK(closed.strings.size() == 9);  // (ab+PHI)^2
  CHECK(as_set(closed).count({"PHI", "PHI"}) == 1);

  // idempotence
  auto twice = oracle_closure(closed, {"a", "b"});
  CHECK(as_set(twice) == as_set(closed));
}

TEST_CASE("oracle_closure_positional restricts per-position alphabets") {
  auto lits = sample_of(2, {{"P", "P"}, {"!P", "P"}});
  std::vector<std::vector<std::string>> delta_at = {{"P", "!P"}, {"P", "!P"}};
  auto closed = oracle_closure_positional(lits, delta_at);
  CHECK(as_set(closed).count({"PHI", "P"}) == 1);
  CHECK(closed.strings.size() == 3);
  CHECK_THROWS_AS(oracle_closure_positional(lits, {{"P"}}), UsageError);
}

TEST_CASE("oracle_maximal keeps the antichain top") {
  auto s = sample_of(2, {{"a", "b"}, {"b", "b"}, {"PHI", "b"}});
  CHECK(as_set(oracle_maximal(s)) == std::set<SymbolString>{{"PHI", "b"}});

  // an antichain is left unchanged
  auto anti = sample_of(2, {{"a", "b"}, {"b", "a"}});
  CHECK(as_set(oracle_maximal(anti)) == as_set(anti));

  auto nested = sample_of(2, {{"PHI", "PHI"}, {"PHI", "a"}, {"a", "a"}});
  CHECK(as_set(oracle_maximal(nested)) == std::set<SymbolString>{{"PHI", "PHI"}});
}

TEST_CASE("closure and maximal properties on random languages") {
  Rng rng(222);
  for (int trial = 0; trial < 40; ++trial) {
    Nfa a = random_nfa(rng, 4, 2);
    int n = pick(rng, 1, 3);
    LanguageSample base = enumerate_length_n(a, n);
    LanguageSample closed = oracle_closure(base, a.alphabet);
    LanguageSample maxi = oracle_maximal(closed);

    // closure is idempotent
    CHECK(as_set(oracle_closure(closed, a.alphabet)) == as_set(closed));

    // maximal output is an antichain covering every base string
    auto leq = [](const SymbolString& lo, const SymbolString& hi) {
      if (lo.size() != hi.size()) return false;
      for (size_t i = 0; i < lo.size(); ++i)
        if (lo[i] != hi[i] && hi[i] != kWildcardSymbol) return false;
      return true;
    };
    for (const SymbolString& s : base.strings) {
      bool covered = false;
      for (const SymbolString& top : maxi.strings) covered = covered || leq(s, top);
      CHECK(covered);
    }

    // the infinite-norm distance can only improve through the pipeline
    SimTable t = random_table(rng, a.alphabet, n);
    std::vector<int> d = iota_range(n);
    double before = oracle_distance1(t, d, base, NormIndex::infinity()).get();
    double after = oracle_distance1(t, d, maxi, NormIndex::infinity()).get();
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("oracle_tl_models enumerates satisfying traces") {
  std::vector<std::string> props = {"P"};
  auto models_true = oracle_tl_models(parse_tl("true", props), props, 1);
  CHECK(models_true.size() == 2);
  auto models_p = oracle_tl_models(parse_tl("P", props), props, 1);
  REQUIRE(models_p.size() == 1);
  CHECK(models_p[0] == std::vector<PropWorld>{1});
  auto models_xp = oracle_tl_models(parse_tl("X P", props), props, 2);
  CHECK(models_xp.size() == 2);
  for (const auto& trace : models_xp) CHECK((trace[1] & 1) == 1);
}

TEST_CASE("oracle_regex_strings matches the automaton language") {
  Rng rng(991);
  for (int trial = 0; trial < 40; ++trial) {
    Regex f = random_regex(rng, {"a", "b"}, 6);
    Nfa a = regex_to_nfa(f);
    for (int n = 0; n <= 3; ++n) {
      auto direct = oracle_regex_strings(f, n);
      auto via_nfa = enumerate_length_n(a, n);
      CAPTURE(f.str());
      CHECK(as_set(direct) == as_set(via_nfa));
    }
  }
}

TEST_CASE("oracle budgets") {
  Rng rng(3);
  const std::vector<std::string> ab = {"a", "b"};
  Regex f = parse_regex("(a | b)*", ab);
  OracleBudget tiny;
  tiny.max_strings = 4;
  CHECK_THROWS_AS(oracle_regex_strings(f, 4, tiny), ResourceError);

  std::vector<std::string> props = {"P", "Q", "R"};
  TlFormula tf = parse_tl("true", props);
  OracleBudget tiny2;
  tiny2.max_traces = 10;
  CHECK_THROWS_AS(oracle_tl_models(tf, props, 4, tiny2), ResourceError);
}
