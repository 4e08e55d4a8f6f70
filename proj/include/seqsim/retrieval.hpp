// retrieval.hpp -- query dispatch, ranked evaluation, oracle cross-checks
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqsim/dataset.hpp"
#include "seqsim/distance.hpp"
#include "seqsim/oracle.hpp"
#include "seqsim/regex.hpp"
#include "seqsim/tl.hpp"

namespace seqsim {

enum class QueryKind { Nfa, Tl, Regex };
enum class Measure { Syn, Sem1, Sem2 };

QueryKind parse_query_kind(const std::string& text);
Measure parse_measure(const std::string& text);

struct Query {
  QueryKind kind = QueryKind::Nfa;
  Nfa nfa;
  TlFormula tl;
  Regex regex;
};

// Parses query text of the given kind against the declared atoms. For the
// automaton kind the text is the JSON document itself.
Query parse_query(QueryKind kind, const std::string& text,
                  std::span<const std::string> atoms);

struct RankedResult {
  std::string id;
  ExtValue distance;
  ExtValue similarity;
  int rank = 0;
};

struct EvalOptions {
  Measure measure = Measure::Sem1;
  NormIndex norm = NormIndex::infinity();
  std::optional<double> threshold;  // keep similarity >= threshold
  bool drop_infinite = false;
};

// One distance per sequence, filtered, sorted by similarity descending with
// ties broken by id ascending, then ranked from 1.
std::vector<RankedResult> evaluate(const Dataset& ds, const Query& q,
                                   const EvalOptions& opts);

struct CrossCheckRow {
  std::string id;
  ExtValue engine;
  ExtValue oracle;
  double deviation = 0.0;  // 0 when both are +inf
  bool pass = true;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  bool pass = true;
  double max_deviation = 0.0;
};

inline constexpr double kCrossCheckTolerance = 1e-9;

CrossCheckRow make_cross_check_row(std::string id, ExtValue engine, ExtValue oracle);
CrossCheckReport summarize_cross_check(std::vector<CrossCheckRow> rows);

// Runs both the production engine and the brute-force reference on every
// sequence.
CrossCheckReport cross_check(const Dataset& ds, const Query& q, Measure measure,
                             NormIndex k);

// 12-significant-digit rendering; infinities print as inf / -inf.
std::string format_value(double v);

// Output formats documented in the README; both end with a newline.
std::string format_json(std::span<const RankedResult> results);
std::string format_tsv(std::span<const RankedResult> results);
std::string format_cross_check(const CrossCheckReport& report);

}  // namespace seqsim
