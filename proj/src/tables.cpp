#include "igcert/tables.hpp"

#include <thread>
#include <unordered_map>

namespace igcert {

namespace {

// Packs an r x r product (q <= 16, r*r <= 16) into 4-bit lanes so the
// parallel product pass can run ahead of the serial interning pass.
inline uint64_t pack_product_row_pair(const Mat& a, const Mat& b,
                                      const FieldCtx& F, int r, int n) {
  // cell value = a * b^T where both are r x n; entry (i,j) = <row i of a, row j of b>
  uint64_t packed = 0;
  int lane = 0;
  for (int i = 0; i < r; ++i) {
    const Fq* ra = a.row(i);
    for (int j = 0; j < r; ++j) {
      const Fq* rb = b.row(j);
      uint8_t acc = 0;
      for (int c = 0; c < n; ++c) {
        acc = F.add_code(acc, F.mul_code(ra[c].code, rb[c].code));
      }
      packed |= uint64_t(acc) << (4 * lane);
      ++lane;
    }
  }
  return packed;
}

Mat unpack_product(uint64_t packed, const FieldRef& field, int r) {
  Mat m(field, r, r);
  int lane = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      m.set(i, j, field->element(uint32_t((packed >> (4 * lane)) & 0xf)));
      ++lane;
    }
  }
  return m;
}

void check_budget(int64_t rows, int64_t cols, int64_t budget, const std::string& what) {
  if (rows * cols > budget) {
    throw BudgetError(what + ": " + std::to_string(rows) + " x "
                      + std::to_string(cols) + " cells exceed the budget of "
                      + std::to_string(budget)
                      + " (raise it explicitly if this is intended)");
  }
}

// Shared core for P_r and the full table: compute all products Y_i * Y_j^T,
// intern them in row-major scan order, then apply the zero policy.
ProductTable build_over_ranked(const RankedSet& ys, ZeroPolicy policy,
                               int64_t budget, int jobs, const std::string& what) {
  const int64_t N = ys.count();
  check_budget(N, N, budget, what);
  const int r = ys.r;
  const int n = ys.n;
  const FieldCtx& F = *ys.field;
  if (r * r > 16 || F.q > 16) {
    throw std::invalid_argument(what + ": supported sizes have r <= 4 and q <= 16");
  }

  std::vector<uint64_t> packed(size_t(N) * N);
  auto worker = [&](int64_t row_begin, int64_t row_end) {
    for (int64_t i = row_begin; i < row_end; ++i) {
      const Mat& a = ys.y(int32_t(i));
      uint64_t* out = packed.data() + size_t(i) * N;
      for (int64_t j = 0; j < N; ++j) {
        out[j] = pack_product_row_pair(a, ys.y(int32_t(j)), F, r, n);
      }
    }
  };
  int workers = std::max(1, jobs);
  if (workers == 1 || N < 64) {
    worker(0, N);
  } else {
    std::vector<std::thread> pool_threads;
    int64_t chunk = (N + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int64_t b = std::min<int64_t>(N, w * chunk);
      int64_t e = std::min<int64_t>(N, b + chunk);
      if (b < e) pool_threads.emplace_back(worker, b, e);
    }
    for (auto& t : pool_threads) t.join();
  }

  ProductTable t;
  t.n_rows = N;
  t.n_cols = N;
  t.k = r;
  t.field = ys.field;
  t.policy = policy;
  t.row_mats = ys.y_mats;
  t.col_mats = ys.x_mats;
  t.cells.resize(size_t(N) * N);

  // serial interning pass keeps value ids deterministic
  std::unordered_map<uint64_t, uint16_t> intern;
  intern.reserve(1024);
  bool zero_marker = (policy == ZeroPolicy::kZeroIfSingular);
  if (zero_marker) {
    t.pool.push_back(Mat(ys.field, r, r));  // vid 0: the adjoined Rees zero
  }
  std::vector<bool> row_has_nonzero(size_t(N), false);
  std::vector<bool> col_has_nonzero(size_t(N), false);
  for (int64_t i = 0; i < N; ++i) {
    for (int64_t j = 0; j < N; ++j) {
      uint64_t key = packed[size_t(i) * N + j];
      auto it = intern.find(key);
      uint16_t vid;
      if (it != intern.end()) {
        vid = it->second;
      } else {
        Mat value = unpack_product(key, ys.field, r);
        if (zero_marker && rank(value) < r) {
          vid = 0;
        } else {
          if (t.pool.size() >= 65535) {
            throw BudgetError(what + ": value pool exceeds 16-bit interning");
          }
          vid = uint16_t(t.pool.size());
          t.pool.push_back(std::move(value));
        }
        intern.emplace(key, vid);
      }
      t.cells[size_t(i) * N + j] = vid;
      if (!zero_marker || vid != 0) {
        row_has_nonzero[size_t(i)] = true;
        col_has_nonzero[size_t(j)] = true;
      }
    }
  }
  for (size_t v = 0; v < t.pool.size(); ++v) {
    if (t.pool[v] == Mat::identity(ys.field, r)) {
      t.identity_vid = int32_t(v);
      break;
    }
  }
  if (policy == ZeroPolicy::kZeroIfSingular) {
    for (int64_t i = 0; i < N; ++i) {
      if (!row_has_nonzero[size_t(i)] || !col_has_nonzero[size_t(i)]) {
        throw std::logic_error(what + ": structure matrix is not regular");
      }
    }
  }
  return t;
}

// All k x m matrices over F_q in code-odometer order (row-major entries,
// last entry fastest).
std::vector<Mat> all_matrices(FieldRef field, int rows, int cols) {
  const uint32_t q = field->q;
  std::vector<Mat> out;
  std::vector<uint8_t> codes(size_t(rows) * cols, 0);
  while (true) {
    Mat m(field, rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        m.set(i, j, {codes[size_t(i) * cols + j]});
      }
    }
    out.push_back(std::move(m));
    size_t t = codes.size();
    while (t > 0 && codes[t - 1] == q - 1) {
      codes[t - 1] = 0;
      --t;
    }
    if (t == 0) break;
    ++codes[t - 1];
  }
  return out;
}

}  // namespace

std::vector<int64_t> ProductTable::value_counts() const {
  std::vector<int64_t> counts(pool.size(), 0);
  for (uint16_t v : cells) ++counts[v];
  return counts;
}

std::vector<int> ProductTable::value_ranks() const {
  std::vector<int> ranks(pool.size());
  for (size_t v = 0; v < pool.size(); ++v) ranks[v] = rank(pool[v]);
  if (policy == ZeroPolicy::kZeroIfSingular && !ranks.empty()) ranks[0] = 0;
  return ranks;
}

const std::vector<std::vector<int32_t>>& ProductTable::identity_rows_of_col() const {
  std::lock_guard<std::mutex> lock(*occ_mutex_);
  if (id_rows_of_col_.empty() && identity_vid >= 0) {
    id_rows_of_col_.resize(size_t(n_cols));
    for (int64_t i = 0; i < n_rows; ++i) {
      const uint16_t* row = cells.data() + size_t(i) * n_cols;
      for (int64_t j = 0; j < n_cols; ++j) {
        if (row[j] == identity_vid) {
          id_rows_of_col_[size_t(j)].push_back(int32_t(i));
        }
      }
    }
  }
  return id_rows_of_col_;
}

const std::vector<std::vector<int32_t>>& ProductTable::identity_cols_of_row() const {
  std::lock_guard<std::mutex> lock(*occ_mutex_);
  if (id_cols_of_row_.empty() && identity_vid >= 0) {
    id_cols_of_row_.resize(size_t(n_rows));
    for (int64_t i = 0; i < n_rows; ++i) {
      const uint16_t* row = cells.data() + size_t(i) * n_cols;
      for (int64_t j = 0; j < n_cols; ++j) {
        if (row[j] == identity_vid) {
          id_cols_of_row_[size_t(i)].push_back(int32_t(j));
        }
      }
    }
  }
  return id_cols_of_row_;
}

ProductTable build_P(const RankedSet& ys, int64_t cell_budget, int jobs) {
  if (ys.r >= ys.n) {
    throw std::invalid_argument("build_P requires 1 <= r < n");
  }
  return build_over_ranked(ys, ZeroPolicy::kZeroIfSingular, cell_budget, jobs,
                           "P_" + std::to_string(ys.r));
}

ProductTable build_T_full(const RankedSet& ys, int64_t cell_budget, int jobs) {
  return build_over_ranked(ys, ZeroPolicy::kKeepAll, cell_budget, jobs,
                           "T_" + std::to_string(ys.n) + "," + std::to_string(ys.r));
}

ProductTable build_T_mk(int m, int k, FieldRef field, int64_t cell_budget) {
  if (k < 1 || k > m) {
    throw std::invalid_argument("build_T_mk requires 1 <= k <= m");
  }
  double size = 1.0;
  for (int i = 0; i < k * m; ++i) size *= field->q;
  if (size > 4096.0) {
    throw BudgetError("T_{m,k}: q^(k*m) = " + std::to_string(int64_t(size))
                      + " exceeds the desk-scale limit of 4096");
  }
  const int64_t N = int64_t(size);
  check_budget(N, N, cell_budget, "T_{m,k}");

  ProductTable t;
  t.n_rows = N;
  t.n_cols = N;
  t.k = k;
  t.field = field;
  t.policy = ZeroPolicy::kKeepAll;
  t.row_mats = all_matrices(field, k, m);
  t.col_mats = all_matrices(field, m, k);
  t.cells.resize(size_t(N) * N);

  std::unordered_map<Mat, uint16_t, MatHash> intern;
  for (int64_t i = 0; i < N; ++i) {
    for (int64_t j = 0; j < N; ++j) {
      Mat prod = matmul(t.row_mats[size_t(i)], t.col_mats[size_t(j)]);
      auto it = intern.find(prod);
      uint16_t vid;
      if (it != intern.end()) {
        vid = it->second;
      } else {
        vid = uint16_t(t.pool.size());
        t.pool.push_back(prod);
        intern.emplace(std::move(prod), vid);
      }
      t.cells[size_t(i) * N + j] = vid;
    }
  }
  for (size_t v = 0; v < t.pool.size(); ++v) {
    if (t.pool[v] == Mat::identity(field, k)) {
      t.identity_vid = int32_t(v);
      break;
    }
  }
  return t;
}

}  // namespace igcert
