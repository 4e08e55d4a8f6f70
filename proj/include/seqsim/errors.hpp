// errors.hpp -- error taxonomy shared by the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace seqsim {

// Caller misuse: bad argument combinations, out-of-range norms, empty inputs
// where the operation is undefined. CLI exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Query text (TL, regex, automaton JSON) that does not parse. Exit code 2.
struct QueryParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent data: undeclared symbols, out-of-range similarity
// values, broken dataset files. Exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction or enumeration exceeded its configured budget. Exit code 4.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace seqsim
