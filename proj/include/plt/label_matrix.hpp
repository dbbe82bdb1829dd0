#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plt {

// Sparse binary label matrix stored both row-wise and column-wise.
// rows[i] holds the sorted label ids of example i, cols[j] the sorted
// example ids having label j. The two views are transposes of each other.
struct LabelMatrix {
  int n = 0;  // examples
  int m = 0;  // labels
  std::vector<std::vector<int>> rows;
  std::vector<std::vector<int>> cols;
};

struct ColumnStats {
  std::vector<long long> weights;    // per-label Hamming weight
  std::vector<double> fractions;     // weights[j] / n
  long long total_weight = 0;
};

enum class StructureKind { MultiClass, Nested, General };

struct StructureInfo {
  StructureKind kind = StructureKind::General;
  // Present iff kind == Nested: label ids ordered so that the columns form a
  // componentwise nondecreasing chain.
  std::vector<int> nested_order;
};

// Text format: header "n m", then n lines of space-separated 0-based label
// ids (a line may be empty). Throws std::runtime_error on malformed input.
LabelMatrix parse_dataset(std::istream& in);
LabelMatrix parse_dataset(const std::string& text);

// Builds a matrix from row sets; validates ids and sortedness, fills cols.
LabelMatrix matrix_from_rows(int n, int m, std::vector<std::vector<int>> rows);

ColumnStats column_stats(const LabelMatrix& Y);

StructureInfo detect_structure(const LabelMatrix& Y);

const char* structure_name(StructureKind k);

}  // namespace plt
