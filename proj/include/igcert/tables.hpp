#ifndef IGCERT_TABLES_HPP_
#define IGCERT_TABLES_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "igcert/enumeration.hpp"
#include "igcert/mat.hpp"

namespace igcert {

// Hard failure for table sizes beyond the configured cell budget.  Never
// truncates silently.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int64_t kDefaultCellBudget = 200'000'000;

enum class ZeroPolicy : uint8_t {
  kZeroIfSingular,  // Rees structure matrix: singular products become 0
  kKeepAll,         // full product table: every product is a value
};

// Product table with interned cell values.  Cells store small value-ids into
// a pool of distinct product matrices; under kZeroIfSingular value-id 0 is
// the zero marker (decoding to the zero matrix, the adjoined Rees zero).
// Immutable after build; the occurrence indexes are memoized on first use
// behind a mutex.
class ProductTable {
 public:
  int64_t n_rows = 0;
  int64_t n_cols = 0;
  int k = 0;  // product dimension: values live in M_k(F_q)
  FieldRef field;
  ZeroPolicy policy = ZeroPolicy::kKeepAll;

  std::vector<uint16_t> cells;  // row-major value ids
  std::vector<Mat> pool;        // value id -> k x k matrix
  std::vector<Mat> row_mats;    // row labels
  std::vector<Mat> col_mats;    // column labels
  int32_t identity_vid = -1;

  uint16_t cell(int64_t row, int64_t col) const {
    if (row < 0 || row >= n_rows || col < 0 || col >= n_cols) {
      throw std::out_of_range("table cell index out of range");
    }
    return cells[size_t(row) * n_cols + col];
  }
  uint16_t cell_unchecked(int64_t row, int64_t col) const {
    return cells[size_t(row) * n_cols + col];
  }
  const Mat& value(int32_t vid) const {
    if (vid < 0 || size_t(vid) >= pool.size()) {
      throw std::out_of_range("value id out of range");
    }
    return pool[vid];
  }
  bool nonzero(int64_t row, int64_t col) const {
    uint16_t v = cell(row, col);
    if (policy == ZeroPolicy::kZeroIfSingular) return v != 0;
    return rank(pool[v]) > 0;
  }

  std::vector<int64_t> value_counts() const;  // occurrences per value id
  std::vector<int> value_ranks() const;       // rank per value id

  // For each column, the rows where the cell is the identity, and dually.
  // Built on demand; required by the connectivity engines.
  const std::vector<std::vector<int32_t>>& identity_rows_of_col() const;
  const std::vector<std::vector<int32_t>>& identity_cols_of_row() const;

 private:
  mutable std::unique_ptr<std::mutex> occ_mutex_ = std::make_unique<std::mutex>();
  mutable std::vector<std::vector<int32_t>> id_rows_of_col_;
  mutable std::vector<std::vector<int32_t>> id_cols_of_row_;
};

// Rees structure matrix P_r for the rank-r principal factor: rows Y_r,
// columns X_r, cell YX when rank(YX) = r and the zero marker otherwise.
// Every nonzero value is invertible; every row and column has a nonzero
// entry (regularity), verified at build time.
ProductTable build_P(const RankedSet& ys, int64_t cell_budget = kDefaultCellBudget,
                     int jobs = 1);

// Full product table over the same index sets: all products YX are kept,
// including the singular ones.
ProductTable build_T_full(const RankedSet& ys,
                          int64_t cell_budget = kDefaultCellBudget, int jobs = 1);

// Unrestricted table: rows are all k x m matrices, columns all m x k
// matrices, cells the products (row) x (col) in M_k.  Desk scale only:
// requires q^(k*m) <= 4096.
ProductTable build_T_mk(int m, int k, FieldRef field,
                        int64_t cell_budget = kDefaultCellBudget);

}  // namespace igcert

#endif  // IGCERT_TABLES_HPP_
