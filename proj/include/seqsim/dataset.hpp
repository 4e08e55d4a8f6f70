// dataset.hpp -- sequence-database files and their validation
#pragma once

#include <string>
#include <vector>

#include "seqsim/simtable.hpp"

namespace seqsim {

struct SequenceEntry {
  std::string id;
  SimTable table;  // one row per database state, sharing the dataset atoms

  int length() const { return table.num_states(); }
};

struct Dataset {
  std::vector<std::string> atoms;
  std::vector<SequenceEntry> sequences;
};

// Dataset JSON: {"atoms":[...], "sequences":[{"id":"...","states":[{atom:
// value,...},...]}]}. Values are numbers in [0,1] or the string "-inf"; a
// "!P" key overrides the negated-literal default for P in that state.
Dataset dataset_from_json(const std::string& text);

// Reads and validates the file at path.
Dataset ingest(const std::string& path);

}  // namespace seqsim
