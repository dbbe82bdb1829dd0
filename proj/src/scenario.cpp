#include "plt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plt {

void validate_scenario(const Scenario& s) {
  double mass = 0.0;
  std::set<std::vector<int>> seen;
  for (const auto& [subset, p] : s.support) {
    if (p < 0.0 || p > 1.0) throw std::runtime_error("scenario probability out of [0,1]");
    mass += p;
    if (!std::is_sorted(subset.begin(), subset.end()) ||
        std::adjacent_find(subset.begin(), subset.end()) != subset.end())
      throw std::runtime_error("scenario subset not a sorted set");
    for (int j : subset)
      if (j < 0 || j >= s.m) throw std::runtime_error("scenario label id out of range");
    if (!seen.insert(subset).second) throw std::runtime_error("duplicate scenario subset");
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::runtime_error("scenario probabilities do not sum to 1");
}

Scenario parse_scenario(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty scenario");
  std::istringstream header(line);
  long long m = -1, k = -1;
  if (!(header >> m >> k) || m < 0 || k < 0)
    throw std::runtime_error("malformed scenario header, expected \"m k\"");
  Scenario s;
  s.m = static_cast<int>(m);
  for (long long i = 0; i < k; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("fewer scenario lines than declared");
    std::istringstream ls(line);
    double p;
    if (!(ls >> p)) throw std::runtime_error("malformed scenario line: " + line);
    std::vector<int> subset;
    long long id;
    while (ls >> id) subset.push_back(static_cast<int>(id));
    std::sort(subset.begin(), subset.end());
    s.support.emplace_back(std::move(subset), p);
  }
  validate_scenario(s);
  return s;
}

Scenario parse_scenario(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

}  // namespace plt
