#include "igcert/connectivity.hpp"

#include <algorithm>
#include <deque>

#include "union_find.hpp"

namespace igcert {

namespace {

// Buckets keyed by witness id, reset per group via a generation stamp.
struct StampedBuckets {
  std::vector<int32_t> val;
  std::vector<uint32_t> gen;
  uint32_t cur = 0;

  explicit StampedBuckets(size_t n) : val(n, -1), gen(n, 0) {}
  void new_group() { ++cur; }
  // returns the stored occurrence for this witness, or -1 and stores o
  int32_t probe(int32_t key, int32_t o) {
    if (gen[size_t(key)] == cur) return val[size_t(key)];
    gen[size_t(key)] = cur;
    val[size_t(key)] = o;
    return -1;
  }
};

std::vector<int64_t> occurrences_of(const ProductTable& t, int32_t vid) {
  if (vid < 0 || size_t(vid) >= t.pool.size()) {
    throw std::out_of_range("value id out of range");
  }
  std::vector<int64_t> cells;
  for (int64_t i = 0; i < t.n_rows; ++i) {
    const uint16_t* row = t.cells.data() + size_t(i) * t.n_cols;
    for (int64_t j = 0; j < t.n_cols; ++j) {
      if (row[j] == vid) {
        cells.push_back(i * t.n_cols + j);
      }
    }
  }
  if (cells.empty()) {
    throw std::invalid_argument("value does not occur in the table");
  }
  return cells;
}

std::vector<int32_t> renumber_components(UnionFind& uf, size_t n, int32_t* count) {
  std::vector<int32_t> comp(n, -1);
  std::vector<int32_t> label_of_root(n, -1);
  int32_t next = 0;
  for (size_t i = 0; i < n; ++i) {
    int32_t root = uf.find(int32_t(i));
    if (label_of_root[size_t(root)] < 0) {
      label_of_root[size_t(root)] = next++;
    }
    comp[i] = label_of_root[size_t(root)];
  }
  *count = next;
  return comp;
}

}  // namespace

LambdaResult lambda_components(const ProductTable& t, int32_t vid) {
  LambdaResult res;
  res.vid = vid;
  res.cells = occurrences_of(t, vid);
  UnionFind uf(int32_t(res.cells.size()));
  std::vector<int32_t> first_in_row(size_t(t.n_rows), -1);
  std::vector<int32_t> first_in_col(size_t(t.n_cols), -1);
  for (size_t o = 0; o < res.cells.size(); ++o) {
    int32_t row = int32_t(res.cells[o] / t.n_cols);
    int32_t col = int32_t(res.cells[o] % t.n_cols);
    if (first_in_row[size_t(row)] < 0) {
      first_in_row[size_t(row)] = int32_t(o);
    } else {
      uf.unite(first_in_row[size_t(row)], int32_t(o));
    }
    if (first_in_col[size_t(col)] < 0) {
      first_in_col[size_t(col)] = int32_t(o);
    } else {
      uf.unite(first_in_col[size_t(col)], int32_t(o));
    }
  }
  res.comp = renumber_components(uf, res.cells.size(), &res.n_components);
  return res;
}

StrongForest strong_components(const ProductTable& t, int32_t vid) {
  StrongForest res;
  res.vid = vid;
  res.cells = occurrences_of(t, vid);
  const size_t n_occ = res.cells.size();
  UnionFind uf(static_cast<int32_t>(n_occ));

  const auto& id_rows_of_col = t.identity_rows_of_col();
  const auto& id_cols_of_row = t.identity_cols_of_row();

  // row pass: occurrences are row-major, so row groups are contiguous
  {
    StampedBuckets buckets(size_t(t.n_rows));
    size_t g = 0;
    while (g < n_occ) {
      int64_t row = res.cells[g] / t.n_cols;
      size_t e = g;
      while (e < n_occ && res.cells[e] / t.n_cols == row) ++e;
      buckets.new_group();
      for (size_t o = g; o < e; ++o) {
        int32_t col = int32_t(res.cells[o] % t.n_cols);
        for (int32_t wit : id_rows_of_col[size_t(col)]) {
          int32_t other = buckets.probe(wit, int32_t(o));
          if (other >= 0 && uf.unite(other, int32_t(o))) {
            res.edges.push_back({other, int32_t(o), true, wit});
          }
        }
      }
      g = e;
    }
  }
  // column pass over the column-sorted view
  {
    std::vector<int32_t> by_col(n_occ);
    std::iota(by_col.begin(), by_col.end(), 0);
    std::stable_sort(by_col.begin(), by_col.end(), [&](int32_t a, int32_t b) {
      return res.cells[size_t(a)] % t.n_cols < res.cells[size_t(b)] % t.n_cols;
    });
    StampedBuckets buckets(size_t(t.n_cols));
    size_t g = 0;
    while (g < n_occ) {
      int64_t col = res.cells[size_t(by_col[g])] % t.n_cols;
      size_t e = g;
      while (e < n_occ && res.cells[size_t(by_col[e])] % t.n_cols == col) ++e;
      buckets.new_group();
      for (size_t i = g; i < e; ++i) {
        int32_t o = by_col[i];
        int32_t row = int32_t(res.cells[size_t(o)] / t.n_cols);
        for (int32_t wit : id_cols_of_row[size_t(row)]) {
          int32_t other = buckets.probe(wit, o);
          if (other >= 0 && uf.unite(other, o)) {
            res.edges.push_back({other, o, false, wit});
          }
        }
      }
      g = e;
    }
  }
  res.comp = renumber_components(uf, n_occ, &res.n_components);
  return res;
}

StrongPath extract_strong_path(const StrongForest& forest, int64_t cell_from,
                               int64_t cell_to) {
  auto index_of = [&](int64_t cell) {
    auto it = std::lower_bound(forest.cells.begin(), forest.cells.end(), cell);
    if (it == forest.cells.end() || *it != cell) {
      throw std::invalid_argument("cell does not carry the value");
    }
    return int32_t(it - forest.cells.begin());
  };
  int32_t from = index_of(cell_from);
  int32_t to = index_of(cell_to);

  StrongPath path;
  path.vid = forest.vid;
  if (from == to) {
    path.cells.push_back(cell_from);
    return path;
  }
  if (forest.comp[size_t(from)] != forest.comp[size_t(to)]) {
    throw std::invalid_argument("cells lie in different strong components");
  }
  std::vector<std::vector<int32_t>> adj(forest.cells.size());
  for (size_t e = 0; e < forest.edges.size(); ++e) {
    adj[size_t(forest.edges[e].a)].push_back(int32_t(e));
    adj[size_t(forest.edges[e].b)].push_back(int32_t(e));
  }
  std::vector<int32_t> via_edge(forest.cells.size(), -1);
  std::vector<int32_t> pred(forest.cells.size(), -1);
  std::deque<int32_t> queue{from};
  pred[size_t(from)] = from;
  while (!queue.empty() && pred[size_t(to)] < 0) {
    int32_t u = queue.front();
    queue.pop_front();
    for (int32_t e : adj[size_t(u)]) {
      const auto& edge = forest.edges[size_t(e)];
      int32_t v = edge.a == u ? edge.b : edge.a;
      if (pred[size_t(v)] < 0) {
        pred[size_t(v)] = u;
        via_edge[size_t(v)] = e;
        queue.push_back(v);
      }
    }
  }
  if (pred[size_t(to)] < 0) {
    throw std::logic_error("forest does not connect the component");
  }
  std::vector<int32_t> rev;
  for (int32_t v = to; v != from; v = pred[size_t(v)]) {
    rev.push_back(v);
  }
  rev.push_back(from);
  std::reverse(rev.begin(), rev.end());
  for (size_t i = 0; i < rev.size(); ++i) {
    path.cells.push_back(forest.cells[size_t(rev[i])]);
    if (i + 1 < rev.size()) {
      const auto& edge = forest.edges[size_t(via_edge[size_t(rev[i + 1])])];
      path.steps.push_back({edge.row_edge, edge.witness});
    }
  }
  return path;
}

bool verify_strong_path(const ProductTable& t, const StrongPath& path,
                        std::string* err) {
  auto fail = [&](const std::string& why) {
    if (err) *err = why;
    return false;
  };
  if (path.cells.empty()) {
    return fail("empty path");
  }
  if (path.steps.size() + 1 != path.cells.size()) {
    return fail("step count does not match cell count");
  }
  uint16_t vid = t.cell(path.cells[0] / t.n_cols, path.cells[0] % t.n_cols);
  for (int64_t cell : path.cells) {
    if (cell < 0 || cell >= t.n_rows * t.n_cols) {
      return fail("cell out of range");
    }
    if (t.cells[size_t(cell)] != vid) {
      return fail("path cells carry different values");
    }
  }
  for (size_t s = 0; s < path.steps.size(); ++s) {
    int64_t a = path.cells[s];
    int64_t b = path.cells[s + 1];
    if (a == b) {
      return fail("step joins a cell to itself");
    }
    int64_t row_a = a / t.n_cols, col_a = a % t.n_cols;
    int64_t row_b = b / t.n_cols, col_b = b % t.n_cols;
    const StrongStep& st = path.steps[s];
    if (st.row_edge) {
      if (row_a != row_b) {
        return fail("row step between different rows");
      }
      if (st.witness < 0 || st.witness >= t.n_rows) {
        return fail("witness row out of range");
      }
      if (t.cell(st.witness, col_a) != t.identity_vid
          || t.cell(st.witness, col_b) != t.identity_vid) {
        return fail("witness cells are not the identity");
      }
    } else {
      if (col_a != col_b) {
        return fail("column step between different columns");
      }
      if (st.witness < 0 || st.witness >= t.n_cols) {
        return fail("witness column out of range");
      }
      if (t.cell(row_a, st.witness) != t.identity_vid
          || t.cell(row_b, st.witness) != t.identity_vid) {
        return fail("witness cells are not the identity");
      }
    }
  }
  return true;
}

Thm52Report check_thm52(int m, int k, FieldRef field, int64_t cell_budget) {
  ProductTable t = build_T_mk(m, k, field, cell_budget);
  Thm52Report report;
  report.m = m;
  report.k = k;
  report.q = field->q;
  report.all_asserted_connected = true;
  std::vector<int> ranks = t.value_ranks();
  std::vector<int64_t> counts = t.value_counts();
  for (size_t vid = 0; vid < t.pool.size(); ++vid) {
    LambdaResult lam = lambda_components(t, int32_t(vid));
    // count lambda edges the cheap way: a group of g cells contributes g-1
    std::vector<int64_t> row_seen(size_t(t.n_rows), 0), col_seen(size_t(t.n_cols), 0);
    int64_t edges = 0;
    for (int64_t cell : lam.cells) {
      if (row_seen[size_t(cell / t.n_cols)]++ > 0) ++edges;
      if (col_seen[size_t(cell % t.n_cols)]++ > 0) ++edges;
    }
    LambdaSweepRow row;
    row.vid = int32_t(vid);
    row.value_digits = mat_digits(t.pool[vid]);
    row.rank = ranks[vid];
    row.occurrences = counts[vid];
    row.lambda_edges_present = edges;
    row.components = lam.n_components;
    row.asserted = (k < m) || (k == m && ranks[vid] < k);
    row.connected = lam.n_components == 1;
    if (row.asserted && !row.connected) {
      report.all_asserted_connected = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Thm63Report check_thm63(const ProductTable& t_full) {
  if (t_full.policy != ZeroPolicy::kKeepAll) {
    throw std::invalid_argument("check_thm63 expects a full product table");
  }
  Thm63Report report;
  report.n = t_full.row_mats.empty() ? 0 : t_full.row_mats[0].cols();
  report.r = t_full.k;
  report.q = t_full.field->q;
  report.all_strong = true;
  std::vector<int> ranks = t_full.value_ranks();
  std::vector<int64_t> counts = t_full.value_counts();
  for (size_t vid = 0; vid < t_full.pool.size(); ++vid) {
    StrongForest forest = strong_components(t_full, int32_t(vid));
    StrongSweepRow row;
    row.vid = int32_t(vid);
    row.value_digits = mat_digits(t_full.pool[vid]);
    row.rank = ranks[vid];
    row.occurrences = counts[vid];
    row.components = forest.n_components;
    if (forest.n_components != 1) {
      report.all_strong = false;
    }
    report.rows.push_back(std::move(row));
  }
  // values of M_r that never occur, reported not asserted
  double total = 1.0;
  for (int i = 0; i < t_full.k * t_full.k; ++i) total *= t_full.field->q;
  if (total <= 65536.0) {
    std::unordered_map<Mat, bool, MatHash> seen;
    for (const Mat& v : t_full.pool) seen.emplace(v, true);
    std::vector<uint8_t> codes(size_t(t_full.k) * t_full.k, 0);
    while (true) {
      Mat m(t_full.field, t_full.k, t_full.k);
      for (int i = 0; i < t_full.k; ++i) {
        for (int j = 0; j < t_full.k; ++j) {
          m.set(i, j, {codes[size_t(i) * t_full.k + j]});
        }
      }
      if (!seen.count(m)) {
        report.absent_values.push_back(mat_digits(m));
      }
      size_t t = codes.size();
      while (t > 0 && codes[t - 1] == t_full.field->q - 1) {
        codes[t - 1] = 0;
        --t;
      }
      if (t == 0) break;
      ++codes[t - 1];
    }
  }
  return report;
}

}  // namespace igcert
