#include <cmath>

#include "doctest.h"
#include "seqsim/simtable.hpp"
#include "support.hpp"

using namespace seqsim;
using namespace testsupport;

namespace {
const double kTol = 1e-9;
}

TEST_CASE("norm_distance matches the worked example") {
  std::vector<double> x = {0.5, 0.0}, y = {1.0, 1.0};
  CHECK(norm_distance(x, y, NormIndex::finite(1)).get() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(norm_distance(x, y, NormIndex::infinity()).get() == doctest::Approx(1.0).epsilon(1e-12));

  // independent high-precision route for k=2: sqrt((0.25 + 1) / 2)
  long double expected = std::sqrt((0.25L + 1.0L) / 2.0L);
  CHECK(norm_distance(x, y, NormIndex::finite(2)).get() ==
        doctest::Approx(static_cast<double>(expected)).epsilon(kTol));
  CHECK(norm_distance(x, y, NormIndex::finite(2)).get() ==
        doctest::Approx(0.790569415042).epsilon(kTol));
}

TEST_CASE("norm_distance identity and validation") {
  std::vector<double> x = {0.3, 0.7, 1.0};
  CHECK(norm_distance(x, x, NormIndex::finite(3)).get() == 0.0);
  CHECK(norm_distance(x, x, NormIndex::infinity()).get() == 0.0);

  std::vector<double> shorter = {0.3};
  CHECK_THROWS_AS(norm_distance(x, shorter, NormIndex::finite(1)), UsageError);
  std::vector<double> empty;
  CHECK_THROWS_AS(norm_distance(empty, empty, NormIndex::finite(1)), UsageError);
}

TEST_CASE("norm index bounds and parsing") {
  CHECK_THROWS_AS(NormIndex::finite(0), UsageError);
  CHECK_THROWS_AS(NormIndex::finite(65), UsageError);
  CHECK(NormIndex::finite(64).k() == 64);
  CHECK(NormIndex::parse("inf").is_infinite());
  CHECK(NormIndex::parse("2").k() == 2);
  CHECK_THROWS_AS(NormIndex::parse("fast"), UsageError);
  CHECK_THROWS_AS(NormIndex::parse("100"), UsageError);
}

TEST_CASE("norm monotonicity in k on random vectors") {
  Rng rng(7001);
  for (int trial = 0; trial < 200; ++trial) {
    int n = pick(rng, 1, 6);
    std::vector<double> x, y;
    for (int i = 0; i < n; ++i) {
      x.push_back(pick(rng, 0, 100) / 100.0);
      y.push_back(pick(rng, 0, 100) / 100.0);
    }
    double prev = norm_distance(x, y, NormIndex::finite(1)).get();
    for (int k : {2, 3, 5, 8, 16, 32, 64}) {
      double cur = norm_distance(x, y, NormIndex::finite(k)).get();
      CHECK(prev <= cur + 1e-12);
      prev = cur;
    }
    CHECK(prev <= norm_distance(x, y, NormIndex::infinity()).get() + 1e-12);
  }
}

TEST_CASE("norm convergence toward the infinite norm") {
  std::vector<double> x = {0.1, 0.6, 0.3, 0.9}, y = {1.0, 0.2, 0.4, 0.1};
  double limit = norm_distance(x, y, NormIndex::infinity()).get();
  double prev = 0.0;
  for (int k : {8, 16, 32, 64}) {
    double cur = norm_distance(x, y, NormIndex::finite(k)).get();
    CHECK(cur >= prev - 1e-12);
    CHECK(cur <= limit + 1e-12);
    prev = cur;
  }
  CHECK(limit - prev < 0.2);  // the chain approaches the max from below
}

TEST_CASE("simvec drops wildcard positions") {
  SimTable t(std::vector<std::string>{"P"});
  t.add_state(std::vector<double>{0.9});
  t.add_state(std::vector<double>{0.4});
  std::vector<int> d = {0, 1};

  auto v = simvec(t, d, SymbolString{"PHI", "P"});
  REQUIRE(v.size() == 1);
  CHECK(v[0] == doctest::Approx(0.4));

  CHECK(simvec(t, d, SymbolString{"PHI", "PHI"}).empty());
  CHECK_THROWS_AS(simvec(t, d, SymbolString{"P"}), UsageError);
  CHECK_THROWS_AS(simvec(t, d, SymbolString{"Q", "P"}), DataError);
}

TEST_CASE("simvec on the worked example") {
  SimTable t = golden_table();
  std::vector<int> d = {0, 1};
  auto v = simvec(t, d, SymbolString{"a", "b"});
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(0.5));
  CHECK(v[1] == doctest::Approx(0.0));
}

TEST_CASE("dist clauses") {
  SimTable t = golden_table();
  std::vector<int> d = {0, 1};

  // phi-b on the worked table: only the second position counts
  CHECK(dist(t, d, SymbolString{"PHI", "b"}, NormIndex::finite(1)).get() ==
        doctest::Approx(1.0).epsilon(1e-12));
  // length mismatch
  CHECK(dist(t, d, SymbolString{"a", "b", "a"}, NormIndex::finite(1)).is_plus_infinity());
  // all wildcards
  CHECK(dist(t, d, SymbolString{"PHI", "PHI"}, NormIndex::finite(2)).get() == 0.0);
}

TEST_CASE("dist with hard-constraint markers") {
  SimTable t(std::vector<std::string>{"a", "b"});
  t.add_state(std::vector<double>{-kInfinity, 1.0});
  std::vector<int> d = {0};
  for (NormIndex k : {NormIndex::finite(1), NormIndex::finite(3), NormIndex::infinity()}) {
    CHECK(dist(t, d, SymbolString{"a"}, k).is_plus_infinity());
    // the marker under a wildcard is dropped
    CHECK(dist(t, d, SymbolString{"PHI"}, k).get() == 0.0);
    CHECK(dist(t, d, SymbolString{"b"}, k).get() == 0.0);
  }
}

TEST_CASE("dist is zero when every selected simval is one") {
  SimTable t(std::vector<std::string>{"a"});
  t.add_state(std::vector<double>{1.0});
  t.add_state(std::vector<double>{1.0});
  std::vector<int> d = {0, 1};
  CHECK(dist(t, d, SymbolString{"a", "a"}, NormIndex::finite(4)).get() == 0.0);
}

TEST_CASE("dist ignores atom declaration order") {
  SimTable t1(std::vector<std::string>{"a", "b"});
  t1.add_state(std::vector<double>{0.25, 0.75});
  SimTable t2(std::vector<std::string>{"b", "a"});
  t2.add_state(std::vector<double>{0.75, 0.25});
  std::vector<int> d = {0};
  for (const char* sym : {"a", "b"}) {
    CHECK(dist(t1, d, SymbolString{sym}, NormIndex::finite(2)).get() ==
          dist(t2, d, SymbolString{sym}, NormIndex::finite(2)).get());
  }
}

TEST_CASE("empty sequence distances") {
  SimTable t(std::vector<std::string>{"a"});
  std::vector<int> d;
  CHECK(dist(t, d, SymbolString{}, NormIndex::finite(1)).get() == 0.0);
  CHECK(dist(t, d, SymbolString{"a"}, NormIndex::finite(1)).is_plus_infinity());
}

TEST_CASE("similarity pairing") {
  CHECK(similarity_of(ExtValue(0.25)).get() == doctest::Approx(0.75));
  CHECK(similarity_of(ExtValue::plus_infinity()).is_minus_infinity());
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(SimTable(std::vector<std::string>{"a", "a"}), DataError);
  CHECK_THROWS_AS(SimTable(std::vector<std::string>{"PHI"}), DataError);
  SimTable t(std::vector<std::string>{"a"});
  CHECK_THROWS_AS(t.add_state(std::vector<double>{1.5}), DataError);
  CHECK_THROWS_AS(t.add_state(std::vector<double>{-0.1}), DataError);
  CHECK_THROWS_AS(t.add_state(std::vector<double>{0.1, 0.2}), DataError);
}

TEST_CASE("negated literal view") {
  SimTable t(std::vector<std::string>{"P"});
  t.add_state(std::vector<double>{0.3});
  t.add_state(std::vector<double>{-kInfinity});
  CHECK(t.simval(0, "!P") == doctest::Approx(0.7));
  CHECK(t.simval(1, "!P") == -kInfinity);  // -inf maps to -inf by default
  t.set_negated_override(0, "P", 0.9);
  CHECK(t.simval(0, "!P") == doctest::Approx(0.9));
  CHECK(t.simval(0, "P") == doctest::Approx(0.3));
}
