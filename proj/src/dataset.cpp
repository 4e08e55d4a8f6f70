#include "seqsim/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace seqsim {

namespace {

double parse_simval(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "-inf") return -kInfinity;
    throw DataError(where + ": string values must be \"-inf\"");
  }
  if (!v.is_number()) throw DataError(where + ": expected a number or \"-inf\"");
  double x = v.get<double>();
  if (x < 0.0 || x > 1.0)
    throw DataError(where + ": value " + std::to_string(x) + " outside [0,1]");
  return x;
}

}  // namespace

Dataset dataset_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("dataset JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array() ||
      !j.contains("sequences") || !j["sequences"].is_array())
    throw DataError("dataset JSON: expected {\"atoms\":[...], \"sequences\":[...]}");

  Dataset ds;
  for (const auto& a : j["atoms"]) {
    std::string name = a.get<std::string>();
    if (!name.empty() && name.front() == '!')
      throw DataError("atom \"" + name + "\" must not start with '!'");
    ds.atoms.push_back(name);
  }

  std::set<std::string> seen_ids;
  for (const auto& js : j["sequences"]) {
    if (!js.is_object() || !js.contains("id") || !js.contains("states") ||
        !js["states"].is_array())
      throw DataError("dataset JSON: each sequence needs \"id\" and \"states\"");
    SequenceEntry seq;
    seq.id = js["id"].get<std::string>();
    if (!seen_ids.insert(seq.id).second)
      throw DataError("duplicate sequence id \"" + seq.id + "\"");
    seq.table = SimTable(ds.atoms);

    int index = 0;
    for (const auto& state : js["states"]) {
      std::string where = "sequence \"" + seq.id + "\" state " + std::to_string(index);
      if (!state.is_object()) throw DataError(where + ": expected an object");
      std::vector<double> values;
      for (const std::string& atom : ds.atoms) {
        if (!state.contains(atom)) throw DataError(where + ": missing atom \"" + atom + "\"");
        values.push_back(parse_simval(state[atom], where + " atom \"" + atom + "\""));
      }
      int row = seq.table.add_state(values);
      for (const auto& [key, value] : state.items()) {
        if (key.empty() || key.front() != '!') {
          if (seq.table.atom_column(key) < 0)
            throw DataError(where + ": unknown key \"" + key + "\"");
          continue;
        }
        std::string atom = key.substr(1);
        if (seq.table.atom_column(atom) < 0)
          throw DataError(where + ": override \"" + key + "\" names an undeclared atom");
        seq.table.set_negated_override(row, atom, parse_simval(value, where + " key \"" + key + "\""));
      }
      ++index;
    }
    ds.sequences.push_back(std::move(seq));
  }
  return ds;
}

Dataset ingest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_json(buf.str());
}

}  // namespace seqsim
