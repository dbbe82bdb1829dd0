#include "plt/label_matrix.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace plt {

namespace {

std::vector<std::vector<int>> cols_from_rows(int n, int m,
                                             const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<int>> cols(m);
  for (int i = 0; i < n; ++i)
    for (int j : rows[i]) cols[j].push_back(i);
  return cols;
}

}  // namespace

LabelMatrix matrix_from_rows(int n, int m, std::vector<std::vector<int>> rows) {
  if (n < 0 || m < 0) throw std::runtime_error("negative dimension");
  if (static_cast<int>(rows.size()) != n)
    throw std::runtime_error("expected " + std::to_string(n) + " rows, got " +
                             std::to_string(rows.size()));
  for (int i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    for (size_t k = 0; k < r.size(); ++k) {
      if (r[k] < 0 || r[k] >= m)
        throw std::runtime_error("row " + std::to_string(i) + ": label id " +
                                 std::to_string(r[k]) + " out of range [0," +
                                 std::to_string(m) + ")");
      if (k > 0 && r[k] == r[k - 1])
        throw std::runtime_error("row " + std::to_string(i) + ": duplicate label id " +
                                 std::to_string(r[k]));
    }
  }
  LabelMatrix Y;
  Y.n = n;
  Y.m = m;
  Y.rows = std::move(rows);
  Y.cols = cols_from_rows(n, m, Y.rows);
  return Y;
}

LabelMatrix parse_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty input");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string junk;
  if (!(header >> n >> m) || (header >> junk) || n < 0 || m < 0)
    throw std::runtime_error("malformed header, expected \"n m\"");

  std::vector<std::vector<int>> rows;
  rows.reserve(static_cast<size_t>(n));
  while (static_cast<long long>(rows.size()) < n) {
    if (!std::getline(in, line))
      throw std::runtime_error("fewer than " + std::to_string(n) + " data lines");
    std::istringstream ls(line);
    std::vector<int> row;
    long long id;
    while (ls >> id) row.push_back(static_cast<int>(id));
    if (!ls.eof()) throw std::runtime_error("bad token in data line");
    rows.push_back(std::move(row));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw std::runtime_error("more than " + std::to_string(n) + " data lines");
  }
  return matrix_from_rows(static_cast<int>(n), static_cast<int>(m), std::move(rows));
}

LabelMatrix parse_dataset(const std::string& text) {
  std::istringstream in(text);
  return parse_dataset(in);
}

ColumnStats column_stats(const LabelMatrix& Y) {
  ColumnStats s;
  s.weights.resize(Y.m);
  s.fractions.resize(Y.m);
  for (int j = 0; j < Y.m; ++j) {
    s.weights[j] = static_cast<long long>(Y.cols[j].size());
    s.fractions[j] = Y.n > 0 ? static_cast<double>(s.weights[j]) / Y.n : 0.0;
    s.total_weight += s.weights[j];
  }
  return s;
}

StructureInfo detect_structure(const LabelMatrix& Y) {
  StructureInfo info;
  bool multi_class = Y.n > 0;
  for (const auto& r : Y.rows)
    if (r.size() != 1) {
      multi_class = false;
      break;
    }
  if (multi_class) {
    info.kind = StructureKind::MultiClass;
    return info;
  }

  // Sort columns by (weight, id). A componentwise chain must be sorted this
  // way; equal-weight columns can only chain if they are identical sets, so
  // checking consecutive inclusion in this order covers every permutation
  // within an equal-weight group.
  std::vector<int> order(Y.m);
  for (int j = 0; j < Y.m; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (Y.cols[a].size() != Y.cols[b].size()) return Y.cols[a].size() < Y.cols[b].size();
    return a < b;
  });
  bool nested = true;
  for (int k = 0; k + 1 < Y.m && nested; ++k) {
    const auto& small = Y.cols[order[k]];
    const auto& big = Y.cols[order[k + 1]];
    nested = std::includes(big.begin(), big.end(), small.begin(), small.end());
  }
  if (nested && Y.m > 0) {
    info.kind = StructureKind::Nested;
    info.nested_order = std::move(order);
  } else {
    info.kind = StructureKind::General;
  }
  return info;
}

const char* structure_name(StructureKind k) {
  switch (k) {
    case StructureKind::MultiClass: return "multi-class";
    case StructureKind::Nested: return "nested";
    default: return "general";
  }
}

}  // namespace plt
