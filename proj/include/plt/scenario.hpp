#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace plt {

// Explicit discrete distribution over label subsets for one instance:
// (sorted label subset, probability) pairs summing to 1.
struct Scenario {
  int m = 0;
  std::vector<std::pair<std::vector<int>, double>> support;
};

// Throws if probabilities fall outside [0,1], do not sum to 1 within 1e-9,
// subsets repeat, or label ids are out of range.
void validate_scenario(const Scenario& s);

// Text format: header "m k", then k lines "p id id ..." (empty id list for
// the empty subset).
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario(const std::string& text);

}  // namespace plt
