// seqsim -- similarity-based retrieval over sequence datasets
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "seqsim/retrieval.hpp"

namespace {

struct CommonOptions {
  std::string data_path;
  std::string kind = "nfa";
  std::string query;
  std::string measure = "sem1";
  std::string norm = "inf";
  std::optional<double> threshold;
  std::string output = "json";
  bool drop_infinite = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--data", opt.data_path, "dataset JSON file")->required();
  cmd->add_option("--query-kind", opt.kind, "nfa|tl|regex")->required();
  cmd->add_option("--query", opt.query, "query file or inline query text")->required();
  cmd->add_option("--measure", opt.measure, "syn|sem1|sem2");
  cmd->add_option("--norm", opt.norm, "1..64 or inf");
  cmd->add_option("--threshold", opt.threshold, "keep similarity >= threshold");
  cmd->add_option("--output", opt.output, "json|tsv");
  cmd->add_flag("--drop-infinite", opt.drop_infinite, "omit sequences with distance inf");
}

// --query takes a file path or the query text itself.
std::string load_query_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw seqsim::DataError("cannot open query file \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

int run_eval(const CommonOptions& opt) {
  seqsim::Dataset ds = seqsim::ingest(opt.data_path);
  seqsim::QueryKind kind = seqsim::parse_query_kind(opt.kind);
  seqsim::Query query = seqsim::parse_query(kind, load_query_text(opt.query), ds.atoms);

  seqsim::EvalOptions eval;
  eval.measure = seqsim::parse_measure(opt.measure);
  eval.norm = seqsim::NormIndex::parse(opt.norm);
  eval.threshold = opt.threshold;
  eval.drop_infinite = opt.drop_infinite;

  auto results = seqsim::evaluate(ds, query, eval);
  if (opt.output == "json")
    std::cout << seqsim::format_json(results);
  else if (opt.output == "tsv")
    std::cout << seqsim::format_tsv(results);
  else
    throw seqsim::UsageError("output must be json or tsv, got \"" + opt.output + "\"");
  return 0;
}

int run_oracle(const CommonOptions& opt) {
  seqsim::Dataset ds = seqsim::ingest(opt.data_path);
  seqsim::QueryKind kind = seqsim::parse_query_kind(opt.kind);
  seqsim::Query query = seqsim::parse_query(kind, load_query_text(opt.query), ds.atoms);
  seqsim::Measure measure = seqsim::parse_measure(opt.measure);
  seqsim::NormIndex norm = seqsim::NormIndex::parse(opt.norm);

  seqsim::CrossCheckReport report = seqsim::cross_check(ds, query, measure, norm);
  std::cout << seqsim::format_cross_check(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"similarity-based retrieval from sequence databases"};
  app.require_subcommand(1);

  CommonOptions eval_opt, oracle_opt;
  CLI::App* eval_cmd = app.add_subcommand("eval", "rank sequences against a query");
  add_common_options(eval_cmd, eval_opt);
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "cross-check the engine against the brute-force oracle");
  add_common_options(oracle_cmd, oracle_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_opt);
    return run_oracle(oracle_opt);
  } catch (const seqsim::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const seqsim::QueryParseError& e) {
    std::cerr << "query parse error: " << e.what() << "\n";
    return 2;
  } catch (const seqsim::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const seqsim::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
