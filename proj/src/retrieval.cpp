#include "seqsim/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace seqsim {

QueryKind parse_query_kind(const std::string& text) {
  if (text == "nfa") return QueryKind::Nfa;
  if (text == "tl") return QueryKind::Tl;
  if (text == "regex") return QueryKind::Regex;
  throw UsageError("query kind must be nfa, tl or regex, got \"" + text + "\"");
}

Measure parse_measure(const std::string& text) {
  if (text == "syn") return Measure::Syn;
  if (text == "sem1") return Measure::Sem1;
  if (text == "sem2") return Measure::Sem2;
  throw UsageError("measure must be syn, sem1 or sem2, got \"" + text + "\"");
}

Query parse_query(QueryKind kind, const std::string& text,
                  std::span<const std::string> atoms) {
  Query q;
  q.kind = kind;
  switch (kind) {
    case QueryKind::Nfa: q.nfa = nfa_from_json(text); break;
    case QueryKind::Tl: q.tl = parse_tl(text, atoms); break;
    case QueryKind::Regex: q.regex = parse_regex(text, atoms); break;
  }
  return q;
}

namespace {

std::vector<int> state_range(const SequenceEntry& seq) {
  std::vector<int> d(seq.length());
  std::iota(d.begin(), d.end(), 0);
  return d;
}

DistanceResult engine_distance(const SequenceEntry& seq, const Query& q,
                               Measure measure, NormIndex k) {
  std::vector<int> d = state_range(seq);
  switch (q.kind) {
    case QueryKind::Nfa:
      switch (measure) {
        case Measure::Syn:
          throw UsageError("the syn measure requires a tl or regex query");
        case Measure::Sem1: return distance1(seq.table, d, q.nfa, k);
        case Measure::Sem2: return distance2(seq.table, d, q.nfa, k);
      }
      break;
    case QueryKind::Tl:
      switch (measure) {
        case Measure::Syn: return syndist_tl(seq.table, d, q.tl, k);
        case Measure::Sem1: return semdist1_tl(seq.table, d, q.tl, k);
        case Measure::Sem2: return semdist2_tl(seq.table, d, q.tl, k);
      }
      break;
    case QueryKind::Regex:
      switch (measure) {
        case Measure::Syn:
        case Measure::Sem1: return syndist_regex(seq.table, d, q.regex, k);
        case Measure::Sem2: return semdist2_regex(seq.table, d, q.regex, k);
      }
      break;
  }
  throw UsageError("unsupported query kind / measure combination");
}

ExtValue oracle_distance(const SequenceEntry& seq, const Query& q, Measure measure,
                         NormIndex k) {
  std::vector<int> d = state_range(seq);
  int n = seq.length();
  switch (q.kind) {
    case QueryKind::Nfa: {
      if (measure == Measure::Syn)
        throw UsageError("the syn measure requires a tl or regex query");
      LanguageSample sample = enumerate_length_n(q.nfa, n);
      if (measure == Measure::Sem1) return oracle_distance1(seq.table, d, sample, k);
      LanguageSample maxi =
          oracle_maximal(oracle_closure(sample, q.nfa.alphabet));
      return oracle_distance1(seq.table, d, maxi, k);
    }
    case QueryKind::Tl: {
      if (measure == Measure::Syn) return oracle_syndist_tl(seq.table, d, q.tl, k);
      std::vector<std::string> props = q.tl.atoms();
      if (props.empty()) {
        if (n == 0) return ExtValue::plus_infinity();
        std::vector<PropWorld> trace(n, 0);
        return ExtValue(satisfies(q.tl, trace, props) ? 0.0 : kInfinity);
      }
      int m = static_cast<int>(props.size());
      auto models = oracle_tl_models(q.tl, props, n);
      LanguageSample sample;
      sample.length = n * m;
      for (const auto& s : models) sample.strings.push_back(expn_world_string(s, props));
      std::sort(sample.strings.begin(), sample.strings.end());
      std::vector<int> dd = expn_states(d, m);
      if (measure == Measure::Sem1) return oracle_distance1(seq.table, dd, sample, k);
      std::vector<std::vector<std::string>> delta_at(sample.length);
      for (int p = 0; p < sample.length; ++p)
        delta_at[p] = {props[p % m], "!" + props[p % m]};
      LanguageSample maxi = oracle_maximal(oracle_closure_positional(sample, delta_at));
      return oracle_distance1(seq.table, dd, maxi, k);
    }
    case QueryKind::Regex: {
      if (measure != Measure::Sem2) return oracle_syndist_regex(seq.table, d, q.regex, k);
      LanguageSample sample = oracle_regex_strings(q.regex, n);
      LanguageSample maxi = oracle_maximal(oracle_closure(sample, q.regex.alphabet));
      return oracle_distance1(seq.table, d, maxi, k);
    }
  }
  throw UsageError("unsupported query kind / measure combination");
}

}  // namespace

std::vector<RankedResult> evaluate(const Dataset& ds, const Query& q,
                                   const EvalOptions& opts) {
  std::vector<RankedResult> results;
  for (const SequenceEntry& seq : ds.sequences) {
    DistanceResult r = engine_distance(seq, q, opts.measure, opts.norm);
    if (opts.drop_infinite && r.distance.is_plus_infinity()) continue;
    if (opts.threshold && !(r.similarity.get() >= *opts.threshold)) continue;
    results.push_back({seq.id, r.distance, r.similarity, 0});
  }
  std::sort(results.begin(), results.end(), [](const RankedResult& a, const RankedResult& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.id < b.id;
  });
  for (size_t i = 0; i < results.size(); ++i) results[i].rank = static_cast<int>(i) + 1;
  return results;
}

CrossCheckRow make_cross_check_row(std::string id, ExtValue engine, ExtValue oracle) {
  CrossCheckRow row;
  row.id = std::move(id);
  row.engine = engine;
  row.oracle = oracle;
  if (engine.is_plus_infinity() && oracle.is_plus_infinity()) {
    row.deviation = 0.0;
  } else {
    row.deviation = std::abs(engine.get() - oracle.get());
    if (std::isnan(row.deviation)) row.deviation = kInfinity;
  }
  row.pass = row.deviation <= kCrossCheckTolerance;
  return row;
}

CrossCheckReport summarize_cross_check(std::vector<CrossCheckRow> rows) {
  CrossCheckReport report;
  report.rows = std::move(rows);
  for (const CrossCheckRow& row : report.rows) {
    report.pass = report.pass && row.pass;
    report.max_deviation = std::max(report.max_deviation, row.deviation);
  }
  return report;
}

CrossCheckReport cross_check(const Dataset& ds, const Query& q, Measure measure,
                             NormIndex k) {
  std::vector<CrossCheckRow> rows;
  for (const SequenceEntry& seq : ds.sequences) {
    ExtValue engine = engine_distance(seq, q, measure, k).distance;
    ExtValue oracle = oracle_distance(seq, q, measure, k);
    rows.push_back(make_cross_check_row(seq.id, engine, oracle));
  }
  return summarize_cross_check(std::move(rows));
}

std::string format_value(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_number(double v) {
  if (std::isinf(v)) return json_string(format_value(v));
  return format_value(v);
}

}  // namespace

std::string format_json(std::span<const RankedResult> results) {
  std::string out = "[";
  for (size_t i = 0; i < results.size(); ++i) {
    if (i) out += ",";
    out += "{\"id\":" + json_string(results[i].id);
    out += ",\"distance\":" + json_number(results[i].distance.get());
    out += ",\"similarity\":" + json_number(results[i].similarity.get());
    out += ",\"rank\":" + std::to_string(results[i].rank) + "}";
  }
  out += "]\n";
  return out;
}

std::string format_tsv(std::span<const RankedResult> results) {
  std::string out = "rank\tid\tdistance\tsimilarity\n";
  for (const RankedResult& r : results) {
    out += std::to_string(r.rank) + "\t" + r.id + "\t" + format_value(r.distance.get()) +
           "\t" + format_value(r.similarity.get()) + "\n";
  }
  return out;
}

std::string format_cross_check(const CrossCheckReport& report) {
  std::string out = "id\tengine\toracle\tdeviation\tverdict\n";
  for (const CrossCheckRow& row : report.rows) {
    out += row.id + "\t" + format_value(row.engine.get()) + "\t" +
           format_value(row.oracle.get()) + "\t" + format_value(row.deviation) + "\t" +
           (row.pass ? "ok" : "MISMATCH") + "\n";
  }
  out += "CROSS-CHECK: ";
  out += report.pass ? "PASS" : "FAIL";
  out += " (" + std::to_string(report.rows.size()) + " sequences, max deviation " +
         format_value(report.max_deviation) + ")\n";
  return out;
}

}  // namespace seqsim
