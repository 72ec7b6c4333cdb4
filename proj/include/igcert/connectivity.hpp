#ifndef IGCERT_CONNECTIVITY_HPP_
#define IGCERT_CONNECTIVITY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "igcert/tables.hpp"

namespace igcert {

// Connected components of the lambda-graph of one value: vertices are the
// cells carrying that value, edges join cells in a common row or column.
// Computed by uniting whole row- and column-groups, never pairwise.
struct LambdaResult {
  int32_t vid = -1;
  std::vector<int64_t> cells;   // occurrences, row-major order
  std::vector<int32_t> comp;    // per occurrence, components numbered by first appearance
  int32_t n_components = 0;
};

LambdaResult lambda_components(const ProductTable& t, int32_t vid);

// One strong step between cells that share a row (witnessed by a row whose
// cells under both columns are the identity) or share a column (dually).
struct StrongStep {
  bool row_edge;    // true: same row, witness is a row id; false: dual
  int32_t witness;  // row id or column id of the two cited identity cells
};

// Strong path: consecutive cells share a row or column and every step cites
// two identity cells per the strong-edge rule.
struct StrongPath {
  int32_t vid = -1;
  std::vector<int64_t> cells;
  std::vector<StrongStep> steps;  // steps[i] joins cells[i], cells[i+1]
};

// Strong components of the lambda-graph of one value, with a spanning forest
// of strong edges kept for path extraction.  Strong adjacency inside a row
// group is found by bucketing columns on the rows where they carry the
// identity: two cells in a common row are strongly adjacent iff their
// columns' identity-row sets intersect.  Dually for column groups.  This
// never enumerates cell pairs.
struct StrongForest {
  int32_t vid = -1;
  std::vector<int64_t> cells;  // occurrences, row-major order
  std::vector<int32_t> comp;   // per occurrence
  int32_t n_components = 0;

  struct Edge {
    int32_t a, b;     // indices into cells
    bool row_edge;
    int32_t witness;  // row id (row_edge) or column id
  };
  std::vector<Edge> edges;  // spanning forest; every edge is a strong edge
};

StrongForest strong_components(const ProductTable& t, int32_t vid);

// Walks the forest from one occurrence to another; both must carry the value
// and lie in one strong component.
StrongPath extract_strong_path(const StrongForest& forest, int64_t cell_from,
                               int64_t cell_to);

// Independent verification of a strong path against a table: equal values
// along the path, shared row/column per step, and both cited witness cells
// equal to the identity.  Works against the full table or the structure
// matrix (a path of rank-r cells transfers verbatim).
bool verify_strong_path(const ProductTable& t, const StrongPath& path,
                        std::string* err = nullptr);

// Per-value lambda-connectivity report for the unrestricted table T_{m,k}:
// asserted connected when k < m, or when k = m and the value is singular;
// invertible values at k = m are reported without assertion.
struct LambdaSweepRow {
  int32_t vid;
  std::string value_digits;
  int rank;
  int64_t occurrences;
  int64_t lambda_edges_present;  // false only for the edgeless negative control
  int32_t components;
  bool asserted;
  bool connected;
};

struct Thm52Report {
  int m, k;
  uint32_t q;
  std::vector<LambdaSweepRow> rows;
  bool all_asserted_connected = false;
};

Thm52Report check_thm52(int m, int k, FieldRef field,
                        int64_t cell_budget = kDefaultCellBudget);

// Per-value strong-connectivity report over a full table T_{n,r}; values of
// M_r that never occur are listed as absent, not failures.
struct StrongSweepRow {
  int32_t vid;
  std::string value_digits;
  int rank;
  int64_t occurrences;
  int32_t components;
};

struct Thm63Report {
  int n, r;
  uint32_t q;
  std::vector<StrongSweepRow> rows;       // occurring values only
  std::vector<std::string> absent_values; // digits of M_r values never seen
  bool all_strong = false;
};

Thm63Report check_thm63(const ProductTable& t_full);

}  // namespace igcert

#endif  // IGCERT_CONNECTIVITY_HPP_
