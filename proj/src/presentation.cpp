#include "igcert/presentation.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

#include "igcert/counts.hpp"
#include "union_find.hpp"

namespace igcert {

Presentation build_presentation(const ProductTable& P, const DeltaGraph& dg,
                                const SpanningTree& tree) {
  if (P.policy != ZeroPolicy::kZeroIfSingular) {
    throw std::invalid_argument("build_presentation expects a structure matrix");
  }
  Presentation pres;
  pres.n = P.row_mats.empty() ? 0 : P.row_mats[0].cols();
  pres.r = P.k;
  pres.q = P.field->q;
  pres.gen_of_cell.assign(P.cells.size(), -1);
  for (size_t cell = 0; cell < P.cells.size(); ++cell) {
    if (P.cells[cell] != 0) {
      pres.gen_of_cell[cell] = int32_t(pres.gen_cell.size());
      pres.gen_cell.push_back(int64_t(cell));
    }
  }
  for (int32_t eid : tree.edge_ids) {
    auto [x, y] = dg.edges[size_t(eid)];
    int32_t gen = pres.gen_at(y, x, P.n_cols);
    if (gen < 0) {
      throw std::logic_error("tree edge on a zero cell");
    }
    pres.tree_gens.push_back(gen);
  }
  return pres;
}

ClassMap::ClassMap(int64_t n_gens) : parent_(size_t(n_gens)) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int32_t ClassMap::find(int32_t gen) const {
  while (parent_[size_t(gen)] != gen) {
    parent_[size_t(gen)] = parent_[size_t(parent_[size_t(gen)])];
    gen = parent_[size_t(gen)];
  }
  return gen;
}

bool ClassMap::unite(int32_t a, int32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  auto la = labels_.find(a);
  auto lb = labels_.find(b);
  if (la != labels_.end() && lb != labels_.end() && la->second != lb->second) {
    throw StageError("over-collapse: uniting classes labeled " + la->second
                     + " and " + lb->second);
  }
  parent_[size_t(b)] = a;
  if (la == labels_.end() && lb != labels_.end()) {
    labels_.emplace(a, lb->second);
  }
  if (lb != labels_.end()) {
    labels_.erase(lb);
  }
  return true;
}

int64_t ClassMap::n_classes() const {
  std::vector<uint8_t> seen(parent_.size(), 0);
  int64_t count = 0;
  for (size_t g = 0; g < parent_.size(); ++g) {
    int32_t root = find(int32_t(g));
    if (!seen[size_t(root)]) {
      seen[size_t(root)] = 1;
      ++count;
    }
  }
  return count;
}

void ClassMap::seed_identity(int32_t gen) { identity_gen_ = gen; }

int32_t ClassMap::identity_root() const {
  if (identity_gen_ < 0) {
    throw std::logic_error("identity class not seeded");
  }
  return find(identity_gen_);
}

bool ClassMap::in_identity_class(int32_t gen) const {
  return find(gen) == identity_root();
}

void ClassMap::set_label(int32_t gen, const std::string& value_digits) {
  int32_t root = find(gen);
  auto it = labels_.find(root);
  if (it != labels_.end() && it->second != value_digits) {
    throw StageError("class already labeled " + it->second);
  }
  labels_[root] = value_digits;
}

const std::string* ClassMap::label_of(int32_t gen) const {
  auto it = labels_.find(find(gen));
  return it == labels_.end() ? nullptr : &it->second;
}

int64_t ClassMap::n_labeled_classes() const { return int64_t(labels_.size()); }

void run_stage1(const Presentation& pres, const DeltaGraph& dg,
                const SpanningTree& tree, const ColorState& color,
                ClassMap& classes, CertificateChain& chain) {
  if (!color.all_blue) {
    throw StageError(
        "stage 1 requires the all-blue closure fixed point (holds for 1 <= r < n-1)");
  }
  chain.delta_edges = dg.edge_count();
  chain.stage1_all_blue = true;
  chain.tree_edges.clear();
  for (int32_t eid : tree.edge_ids) {
    chain.tree_edges.push_back(dg.edges[size_t(eid)]);
  }
  chain.trace.clear();
  chain.trace.reserve(color.trace.size());
  for (const TraceStep& st : color.trace) {
    auto [x, y] = dg.edges[size_t(st.edge)];
    chain.trace.push_back({x, y, st.via_x, st.via_y});
  }

  const int64_t n_x = dg.n_x;
  classes.seed_identity(pres.tree_gens.at(0));
  for (int32_t gen : pres.tree_gens) {
    classes.unite(pres.tree_gens[0], gen);
  }
  for (const TraceXY& st : chain.trace) {
    int32_t gen = pres.gen_at(st.y, st.x, n_x);
    if (gen < 0) {
      throw StageError("trace step on a zero cell");
    }
    classes.unite(pres.tree_gens[0], gen);
  }
  // every identity cell of the structure matrix must now sit in the class
  for (auto [x, y] : dg.edges) {
    int32_t gen = pres.gen_at(y, x, n_x);
    if (gen < 0 || !classes.in_identity_class(gen)) {
      throw StageError("stage 1 left an identity cell outside the identity class");
    }
  }
}

void run_stage2(const Presentation& pres, const ProductTable& P,
                const ProductTable& t_full, ClassMap& classes,
                CertificateChain& chain) {
  if (!classes.has_identity()) {
    throw StageError("stage 2 requires stage 1");
  }
  if (P.n_rows != t_full.n_rows || P.n_cols != t_full.n_cols) {
    throw StageError("stage 2 tables have mismatched index sets");
  }
  chain.stage2.clear();
  const int r = t_full.k;
  std::vector<int> ranks = t_full.value_ranks();
  for (size_t vid = 0; vid < t_full.pool.size(); ++vid) {
    if (ranks[vid] < r || int32_t(vid) == t_full.identity_vid) {
      continue;  // identity cells were united by stage 1
    }
    StrongForest forest = strong_components(t_full, int32_t(vid));
    if (forest.n_components != 1) {
      throw StageError("value " + mat_digits(t_full.pool[vid]) + " splits into "
                       + std::to_string(forest.n_components)
                       + " strong components");
    }
    for (const auto& edge : forest.edges) {
      int32_t ga = pres.gen_of_cell[size_t(forest.cells[size_t(edge.a)])];
      int32_t gb = pres.gen_of_cell[size_t(forest.cells[size_t(edge.b)])];
      if (ga < 0 || gb < 0) {
        throw StageError("strong edge touches a zero cell of the structure matrix");
      }
      classes.unite(ga, gb);
    }
    CertificateChain::Stage2Value entry;
    entry.value_digits = mat_digits(t_full.pool[vid]);
    entry.cells = forest.cells;
    entry.edges = forest.edges;
    entry.components = forest.n_components;
    entry.sample_path =
        extract_strong_path(forest, forest.cells.front(), forest.cells.back());
    chain.stage2.push_back(std::move(entry));
    classes.set_label(pres.gen_of_cell[size_t(forest.cells.front())],
                      mat_digits(t_full.pool[vid]));
  }
  classes.set_label(pres.tree_gens.at(0),
                    mat_digits(Mat::identity(t_full.field, r)));

  int64_t expected = int64_t(chain.stage2.size()) + 1;  // labeled values + identity
  if (classes.n_labeled_classes() != expected
      || classes.n_classes() != expected) {
    throw StageError("stage 2 class count does not match the occurring values");
  }
}

void run_stage3(const Presentation& pres, const RankedSet& ys,
                const ProductTable& P, const ClassMap& classes,
                CertificateChain& chain) {
  if (ys.n <= 3 * ys.r) {
    throw StageError("stage 3 requires n > 3r");
  }
  chain.stage3.clear();
  std::string id_digits = mat_digits(Mat::identity(ys.field, ys.r));
  std::vector<Mat> gl = general_linear_group(ys.field, ys.r);
  for (const Mat& A : gl) {
    for (const Mat& B : gl) {
      Fig8Square sq = stage3_square(ys, A, B);
      if (!is_singular(P, sq.ids.x, sq.ids.xp, sq.ids.y, sq.ids.yp)) {
        throw StageError("stage 3 square fails the rectangular-band identity");
      }
      auto class_label = [&](int64_t row, int64_t col) -> const std::string* {
        int32_t gen = pres.gen_at(row, col, P.n_cols);
        if (gen < 0) {
          throw StageError("stage 3 square touches a zero cell");
        }
        return classes.label_of(gen);
      };
      const std::string* la = class_label(sq.ids.y, sq.ids.x);
      const std::string* lab = class_label(sq.ids.y, sq.ids.xp);
      const std::string* li = class_label(sq.ids.yp, sq.ids.x);
      const std::string* lb = class_label(sq.ids.yp, sq.ids.xp);
      if (!la || *la != mat_digits(A) || !lab || *lab != mat_digits(sq.AB)
          || !li || *li != id_digits || !lb || *lb != mat_digits(B)) {
        throw StageError("stage 3 class labels do not certify f_B f_A = f_{AB}");
      }
      chain.stage3.push_back(
          {mat_digits(A), mat_digits(B), mat_digits(sq.AB), sq.ids});
    }
  }
}

namespace {

// Replay-side product kernel: packs Y_i Y_j^T into 4-bit lanes, written
// against the raw matrices only.
uint64_t replay_pack(const Mat& a, const Mat& b, const FieldCtx& F) {
  int r = a.rows();
  int n = a.cols();
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

uint64_t replay_pack_mat(const Mat& m) {
  uint64_t packed = 0;
  int lane = 0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      packed |= uint64_t(m.at(i, j).code) << (4 * lane);
      ++lane;
    }
  }
  return packed;
}

}  // namespace

ReplayReport replay_chain(const CertificateChain& chain, const RankedSet& ys) {
  ReplayReport rep;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.error = why;
    return rep;
  };
  const int r = ys.r;
  const int64_t N = ys.count();
  if (chain.n != ys.n || chain.r != r || chain.q != ys.field->q) {
    return fail("chain parameters do not match the enumeration");
  }
  if (r * r > 16 || ys.field->q > 16) {
    return fail("replay supports r <= 4 and q <= 16");
  }
  const FieldCtx& F = *ys.field;

  // recompute every product from the raw matrices
  std::vector<uint64_t> packed(size_t(N) * N);
  for (int64_t y = 0; y < N; ++y) {
    const Mat& a = ys.y(int32_t(y));
    uint64_t* out = packed.data() + size_t(y) * N;
    for (int64_t x = 0; x < N; ++x) {
      out[x] = replay_pack(a, ys.y(int32_t(x)), F);
    }
  }
  const uint64_t id_packed = replay_pack_mat(Mat::identity(ys.field, r));
  std::unordered_map<uint64_t, int> rank_of;
  for (uint64_t v : packed) {
    if (!rank_of.count(v)) {
      Mat m(ys.field, r, r);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          m.set(i, j, F.element(uint32_t((v >> (4 * (i * r + j))) & 0xf)));
        }
      }
      rank_of.emplace(v, rank(m));
    }
  }
  for (uint64_t v : packed) {
    if (v == id_packed) ++rep.identity_cells;
    if (rank_of[v] == r) ++rep.nonzero_cells;
  }

  auto cell_of = [&](int64_t x, int64_t y) { return y * N + x; };

  // stage 1: tree then trace, cell by cell
  std::vector<uint8_t> blue(size_t(N) * N, 0);
  UnionFind uf(int32_t(N * N));
  if (chain.tree_edges.empty()) {
    return fail("chain has no tree edges");
  }
  const int32_t id_rep = int32_t(cell_of(chain.tree_edges[0].first,
                                         chain.tree_edges[0].second));
  for (auto [x, y] : chain.tree_edges) {
    if (x < 0 || x >= N || y < 0 || y >= N) {
      return fail("tree edge out of range");
    }
    int64_t cell = cell_of(x, y);
    if (packed[size_t(cell)] != id_packed) {
      return fail("tree relation maps to a non-identity product");
    }
    blue[size_t(cell)] = 1;
    uf.unite(id_rep, int32_t(cell));
  }
  for (size_t s = 0; s < chain.trace.size(); ++s) {
    const TraceXY& st = chain.trace[s];
    if (st.x < 0 || st.x >= N || st.y < 0 || st.y >= N || st.via_x < 0
        || st.via_x >= N || st.via_y < 0 || st.via_y >= N || st.via_x == st.x
        || st.via_y == st.y) {
      return fail("trace step " + std::to_string(s) + " is malformed");
    }
    int64_t target = cell_of(st.x, st.y);
    int64_t cited_a = cell_of(st.x, st.via_y);
    int64_t cited_b = cell_of(st.via_x, st.y);
    int64_t cited_c = cell_of(st.via_x, st.via_y);
    if (packed[size_t(target)] != id_packed || packed[size_t(cited_a)] != id_packed
        || packed[size_t(cited_b)] != id_packed
        || packed[size_t(cited_c)] != id_packed) {
      return fail("trace step " + std::to_string(s)
                  + " cites a non-identity cell");
    }
    if (!blue[size_t(cited_a)] || !blue[size_t(cited_b)] || !blue[size_t(cited_c)]) {
      return fail("trace step " + std::to_string(s)
                  + " cites an edge that is not yet blue");
    }
    if (blue[size_t(target)]) {
      return fail("trace step " + std::to_string(s) + " re-derives a blue edge");
    }
    blue[size_t(target)] = 1;
    uf.unite(id_rep, int32_t(target));
    ++rep.stage1_steps;
    ++rep.squares_checked;
  }
  int64_t blue_count = 0;
  for (uint8_t b : blue) blue_count += b;
  if (blue_count != rep.identity_cells) {
    return fail("stage 1 does not reach every identity cell");
  }
  if (chain.stage1_all_blue != true || chain.delta_edges != rep.identity_cells) {
    return fail("stage 1 summary does not match the recomputed identity cells");
  }

  // stage 2: per-value forests
  std::unordered_map<std::string, int64_t> rep_cell_of_value;
  rep_cell_of_value.emplace(mat_digits(Mat::identity(ys.field, r)), id_rep);
  for (const auto& entry : chain.stage2) {
    Mat K = mat_from_digits(ys.field, r, r, entry.value_digits);
    uint64_t k_packed = replay_pack_mat(K);
    if (rank(K) != r) {
      return fail("stage 2 value " + entry.value_digits + " is singular");
    }
    if (k_packed == id_packed) {
      return fail("stage 2 re-lists the identity value");
    }
    if (entry.cells.empty()) {
      return fail("stage 2 value " + entry.value_digits + " lists no cells");
    }
    for (size_t i = 0; i < entry.cells.size(); ++i) {
      int64_t cell = entry.cells[i];
      if (cell < 0 || cell >= N * N || packed[size_t(cell)] != k_packed) {
        return fail("stage 2 cell list is wrong for " + entry.value_digits);
      }
      if (i > 0 && entry.cells[i - 1] >= cell) {
        return fail("stage 2 cell list is not strictly increasing");
      }
    }
    int64_t occurrences = 0;
    for (uint64_t v : packed) {
      if (v == k_packed) ++occurrences;
    }
    if (occurrences != int64_t(entry.cells.size())) {
      return fail("stage 2 cell list for " + entry.value_digits
                  + " is incomplete");
    }
    for (const auto& edge : entry.edges) {
      if (edge.a < 0 || size_t(edge.a) >= entry.cells.size() || edge.b < 0
          || size_t(edge.b) >= entry.cells.size()) {
        return fail("stage 2 edge endpoint out of range");
      }
      int64_t ca = entry.cells[size_t(edge.a)];
      int64_t cb = entry.cells[size_t(edge.b)];
      int64_t row_a = ca / N, col_a = ca % N;
      int64_t row_b = cb / N, col_b = cb % N;
      if (edge.row_edge) {
        if (row_a != row_b || edge.witness < 0 || edge.witness >= N) {
          return fail("stage 2 row edge is malformed");
        }
        if (packed[size_t(cell_of(col_a, edge.witness))] != id_packed
            || packed[size_t(cell_of(col_b, edge.witness))] != id_packed) {
          return fail("stage 2 row edge has non-identity witnesses");
        }
      } else {
        if (col_a != col_b || edge.witness < 0 || edge.witness >= N) {
          return fail("stage 2 column edge is malformed");
        }
        if (packed[size_t(cell_of(edge.witness, row_a))] != id_packed
            || packed[size_t(cell_of(edge.witness, row_b))] != id_packed) {
          return fail("stage 2 column edge has non-identity witnesses");
        }
      }
      uf.unite(int32_t(ca), int32_t(cb));
      ++rep.stage2_edges;
      ++rep.squares_checked;
    }
    int32_t root = uf.find(int32_t(entry.cells[0]));
    for (int64_t cell : entry.cells) {
      if (uf.find(int32_t(cell)) != root) {
        return fail("stage 2 forest does not connect all occurrences of "
                    + entry.value_digits);
      }
    }
    if (entry.components != 1) {
      return fail("stage 2 component summary is wrong");
    }
    rep_cell_of_value.emplace(entry.value_digits, entry.cells[0]);
  }

  // stage 3: every pair of invertible matrices, in enumeration order
  std::vector<Mat> gl = general_linear_group(ys.field, r);
  if (chain.stage3.size() != gl.size() * gl.size()) {
    return fail("stage 3 does not cover GL_r x GL_r");
  }
  size_t s3 = 0;
  for (const Mat& A : gl) {
    for (const Mat& B : gl) {
      const auto& entry = chain.stage3[s3++];
      Mat AB = matmul(A, B);
      if (entry.a_digits != mat_digits(A) || entry.b_digits != mat_digits(B)
          || entry.ab_digits != mat_digits(AB)) {
        return fail("stage 3 pair order or products are wrong");
      }
      const SingularSquare& sq = entry.ids;
      if (sq.x < 0 || sq.x >= N || sq.xp < 0 || sq.xp >= N || sq.y < 0
          || sq.y >= N || sq.yp < 0 || sq.yp >= N || sq.x == sq.xp
          || sq.y == sq.yp) {
        return fail("stage 3 square ids are malformed");
      }
      if (matmul(ys.y(sq.y), ys.x(sq.x)) != A
          || matmul(ys.y(sq.y), ys.x(sq.xp)) != AB
          || matmul(ys.y(sq.yp), ys.x(sq.x)) != Mat::identity(ys.field, r)
          || matmul(ys.y(sq.yp), ys.x(sq.xp)) != B) {
        return fail("stage 3 square cells do not carry A, AB, I, B");
      }
      // the rectangular-band identity, directly on the recomputed values
      if (matmul(A, inverse(Mat::identity(ys.field, r))) != matmul(AB, inverse(B))) {
        return fail("stage 3 square fails the rectangular-band identity");
      }
      auto it_a = rep_cell_of_value.find(entry.a_digits);
      auto it_ab = rep_cell_of_value.find(entry.ab_digits);
      auto it_b = rep_cell_of_value.find(entry.b_digits);
      if (it_a == rep_cell_of_value.end() || it_ab == rep_cell_of_value.end()
          || it_b == rep_cell_of_value.end()) {
        return fail("stage 3 references a value with no stage 2 class");
      }
      if (uf.find(int32_t(cell_of(sq.x, sq.y))) != uf.find(int32_t(it_a->second))
          || uf.find(int32_t(cell_of(sq.xp, sq.y)))
                 != uf.find(int32_t(it_ab->second))
          || uf.find(int32_t(cell_of(sq.x, sq.yp))) != uf.find(id_rep)
          || uf.find(int32_t(cell_of(sq.xp, sq.yp)))
                 != uf.find(int32_t(it_b->second))) {
        return fail("stage 3 square cells land in the wrong classes");
      }
      ++rep.stage3_squares;
      ++rep.squares_checked;
    }
  }

  // final class count over the nonzero cells
  std::unordered_set<int32_t> roots;
  for (int64_t cell = 0; cell < N * N; ++cell) {
    if (rank_of[packed[size_t(cell)]] == r) {
      roots.insert(uf.find(int32_t(cell)));
    }
  }
  rep.classes = int64_t(roots.size());
  rep.ok = true;
  return rep;
}

SoundnessReport check_soundness(const Presentation& pres, const RankedSet& ys,
                                const ClassMap& classes,
                                const CertificateChain& chain) {
  SoundnessReport report;
  ReplayReport replay = replay_chain(chain, ys);
  report.squares_checked = replay.squares_checked;
  if (!replay.ok) {
    report.first_error = replay.error;
    return report;
  }
  report.tree_relations_ok = true;  // replay rejects any non-identity tree cell
  report.squares_ok = true;

  BigCount order = gl_order(pres.r, pres.q);
  report.class_count_ok = (BigCount(replay.classes) == order)
                          && (classes.n_classes() == replay.classes);

  std::unordered_set<std::string> labels;
  bool labels_ok = classes.n_labeled_classes() == classes.n_classes();
  labels.insert(mat_digits(Mat::identity(ys.field, ys.r)));
  for (const auto& entry : chain.stage2) {
    labels_ok = labels_ok && labels.insert(entry.value_digits).second;
  }
  labels_ok = labels_ok && int64_t(labels.size()) == classes.n_classes();
  report.labels_bijective = labels_ok;

  std::vector<Mat> gl = general_linear_group(ys.field, ys.r);
  report.multiplication_closed = chain.stage3.size() == gl.size() * gl.size();

  report.certified = report.tree_relations_ok && report.squares_ok
                     && report.class_count_ok && report.labels_bijective
                     && report.multiplication_closed;
  if (!report.certified && report.first_error.empty()) {
    report.first_error = "class structure does not match GL_r(F_q)";
  }
  return report;
}

std::string export_presentation(const Presentation& pres, const ProductTable& P,
                                ExportMode mode, const CertificateChain* chain,
                                int64_t square_cap) {
  std::ostringstream out;
  out << "p " << pres.n << " " << pres.r << " " << pres.q << "\n";
  for (size_t g = 0; g < pres.gen_cell.size(); ++g) {
    int64_t cell = pres.gen_cell[g];
    int64_t y = cell / P.n_cols;
    int64_t x = cell % P.n_cols;
    out << "gen " << g << " " << x << " " << y << " "
        << mat_digits(P.value(P.cells[size_t(cell)])) << "\n";
  }
  for (int32_t gen : pres.tree_gens) {
    out << "rel unit " << gen << "\n";
  }
  auto emit_square = [&](int32_t x, int32_t xp, int32_t y, int32_t yp) {
    out << "rel square " << pres.gen_at(y, x, P.n_cols) << " "
        << pres.gen_at(yp, x, P.n_cols) << " " << pres.gen_at(y, xp, P.n_cols)
        << " " << pres.gen_at(yp, xp, P.n_cols) << "\n";
  };
  switch (mode) {
    case ExportMode::kTreeOnly:
      break;
    case ExportMode::kCertificateSquares: {
      if (chain == nullptr) {
        throw std::invalid_argument(
            "certificate-squares export needs a certificate chain");
      }
      for (const TraceXY& st : chain->trace) {
        emit_square(st.x, st.via_x, st.y, st.via_y);
      }
      for (const auto& entry : chain->stage2) {
        for (const auto& edge : entry.edges) {
          int64_t ca = entry.cells[size_t(edge.a)];
          int64_t cb = entry.cells[size_t(edge.b)];
          if (edge.row_edge) {
            emit_square(int32_t(ca % P.n_cols), int32_t(cb % P.n_cols),
                        int32_t(ca / P.n_cols), edge.witness);
          } else {
            emit_square(int32_t(ca % P.n_cols), edge.witness,
                        int32_t(ca / P.n_cols), int32_t(cb / P.n_cols));
          }
        }
      }
      for (const auto& entry : chain->stage3) {
        emit_square(entry.ids.x, entry.ids.xp, entry.ids.y, entry.ids.yp);
      }
      break;
    }
    case ExportMode::kFullEnumeration: {
      int64_t emitted = 0;
      for (int32_t x = 0; x < P.n_cols; ++x) {
        for (int32_t xp = x + 1; xp < int32_t(P.n_cols); ++xp) {
          for (int32_t y = 0; y < P.n_rows; ++y) {
            if (P.cell_unchecked(y, x) == 0 || P.cell_unchecked(y, xp) == 0) {
              continue;
            }
            for (int32_t yp = y + 1; yp < int32_t(P.n_rows); ++yp) {
              if (is_singular(P, x, xp, y, yp)) {
                if (++emitted > square_cap) {
                  throw BudgetError(
                      "full enumeration exceeds the square cap of "
                      + std::to_string(square_cap));
                }
                emit_square(x, xp, y, yp);
              }
            }
          }
        }
      }
      break;
    }
  }
  return out.str();
}

ParsedPresentation parse_presentation(const std::string& text) {
  ParsedPresentation parsed;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "p") {
      if (!(ls >> parsed.n >> parsed.r >> parsed.q)) {
        throw std::invalid_argument("bad presentation header");
      }
    } else if (kw == "gen") {
      ParsedPresentation::Gen g;
      if (!(ls >> g.id >> g.x >> g.y >> g.value_digits)) {
        throw std::invalid_argument("bad gen line");
      }
      parsed.gens.push_back(std::move(g));
    } else if (kw == "rel") {
      std::string what;
      ls >> what;
      if (what == "unit") {
        int64_t g;
        if (!(ls >> g)) {
          throw std::invalid_argument("bad unit relation");
        }
        parsed.unit_rels.push_back(g);
      } else if (what == "square") {
        std::array<int64_t, 4> ids;
        if (!(ls >> ids[0] >> ids[1] >> ids[2] >> ids[3])) {
          throw std::invalid_argument("bad square relation");
        }
        parsed.square_rels.push_back(ids);
      } else {
        throw std::invalid_argument("unknown relation kind: " + what);
      }
    } else {
      throw std::invalid_argument("unknown line: " + line);
    }
  }
  return parsed;
}

}  // namespace igcert
