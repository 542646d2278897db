#pragma once

// Polynomial input files:
//   hypersurface {"n": 2, "d": 3, "terms": [{"coeff": [1, 0], "exp": [3, 0, 0]}, ...]}
//   curve        {"n": 3, "d": 1, "components": [{"terms": [...]}, ...]}
// Curve components are binary forms, so their exponents have two entries.

#include <istream>
#include <string>

#include "fstube/submanifold.hpp"

namespace fstube {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses either kind; `source` only labels diagnostics.
Submanifold parse_submanifold(std::istream& in, const std::string& source = "<input>");
Submanifold load_submanifold(const std::string& path);

}  // namespace fstube
