#include "igcert/deltagraph.hpp"

#include <deque>
#include <sstream>

#include "union_find.hpp"

namespace igcert {

DeltaGraph build_delta(const ProductTable& P) {
  if (P.policy != ZeroPolicy::kZeroIfSingular) {
    throw std::invalid_argument("build_delta expects a structure matrix");
  }
  DeltaGraph dg;
  dg.n_x = int32_t(P.n_cols);
  dg.n_y = int32_t(P.n_rows);
  dg.adj_x.resize(size_t(dg.n_x));
  dg.adj_y.resize(size_t(dg.n_y));
  dg.edge_of_cell.assign(size_t(dg.n_x) * dg.n_y, -1);
  for (int32_t y = 0; y < dg.n_y; ++y) {
    const uint16_t* row = P.cells.data() + size_t(y) * P.n_cols;
    for (int32_t x = 0; x < dg.n_x; ++x) {
      if (row[x] == P.identity_vid) {
        int32_t eid = int32_t(dg.edges.size());
        dg.edges.emplace_back(x, y);
        dg.adj_x[size_t(x)].push_back(eid);
        dg.adj_y[size_t(y)].push_back(eid);
        dg.edge_of_cell[size_t(y) * dg.n_x + x] = eid;
      }
    }
  }
  return dg;
}

SpanningTree build_spanning_tree(const RankedSet& ys, const DeltaGraph& dg) {
  SpanningTree tree;
  tree.in_tree.assign(dg.edges.size(), 0);
  auto add_edge = [&](int32_t x, int32_t y, TreeTag tag, const char* kind) {
    int32_t eid = dg.edge_id(x, y);
    if (eid < 0) {
      throw std::logic_error(std::string("spanning tree ") + kind
                             + " target is not an edge of the graph");
    }
    if (!tree.in_tree[size_t(eid)]) {
      tree.in_tree[size_t(eid)] = 1;
      tree.edge_ids.push_back(eid);
      tree.tags.push_back(tag);
    } else if (tag == TreeTag::kT2) {
      // the diagonal edge (I(S)^T, I(S)) is both T1 and T2
      for (size_t t = 0; t < tree.edge_ids.size(); ++t) {
        if (tree.edge_ids[t] == eid) {
          tree.tags[t] = TreeTag::kT1T2;
          break;
        }
      }
    }
  };

  // T1: every Y to the scattered identity of its own region
  for (int32_t y = 0; y < ys.count(); ++y) {
    add_edge(ys.diagonal_id(ys.region_of[y]), y, TreeTag::kT1, "T1");
  }
  // T2: every X to the scattered identity of its own region
  for (int32_t x = 0; x < ys.count(); ++x) {
    add_edge(x, ys.diagonal_id(ys.region_of[x]), TreeTag::kT2, "T2");
  }
  // T3: one edge per non-minimal region towards its predecessor
  for (size_t ri = 0; ri < ys.regions.size(); ++ri) {
    const SubsetR& s = ys.regions[ri];
    if (is_minimal_subset(s)) continue;
    int j = 0;
    while (s.idx[size_t(j)] == j + 1) ++j;
    std::vector<std::vector<int>> groups;
    for (size_t t = 0; t < s.size(); ++t) {
      if (int(t) == j) {
        groups.push_back({s.idx[t] - 1, s.idx[t]});
      } else {
        groups.push_back({s.idx[t]});
      }
    }
    Mat target = scattered_identity_sets(ys.field, ys.n, groups);
    int32_t y = ys.id_of_y(target);
    if (y < 0) {
      throw std::logic_error("T3 target matrix is not an enumerated Y");
    }
    int32_t x = ys.diagonal_id(int32_t(ri));
    if (matmul(ys.y(y), ys.x(x)) != Mat::identity(ys.field, ys.r)) {
      throw std::logic_error("T3 edge product is not the identity");
    }
    add_edge(x, y, TreeTag::kT3, "T3");
  }

  // verify: tree size, coverage and acyclicity
  int64_t expected = int64_t(ys.count()) * 2 - 1;
  if (int64_t(tree.edge_ids.size()) != expected) {
    throw std::logic_error("spanning tree has " + std::to_string(tree.edge_ids.size())
                           + " edges, expected " + std::to_string(expected));
  }
  UnionFind uf(dg.n_x + dg.n_y);
  for (int32_t eid : tree.edge_ids) {
    auto [x, y] = dg.edges[size_t(eid)];
    if (!uf.unite(x, dg.n_x + y)) {
      throw std::logic_error("spanning tree contains a cycle");
    }
  }
  int32_t root = uf.find(0);
  for (int32_t v = 1; v < dg.n_x + dg.n_y; ++v) {
    if (uf.find(v) != root) {
      throw std::logic_error("spanning tree does not span all vertices");
    }
  }
  return tree;
}

namespace {

// Flat array of per-vertex bitsets; the whole structure stays cache-resident
// at the sizes the budget admits, which is what makes the square search fast.
struct BitRows {
  size_t words;
  std::vector<uint64_t> bits;

  BitRows(size_t rows, size_t cols)
      : words((cols + 63) / 64), bits(rows * words, 0) {}
  uint64_t* row(size_t i) { return bits.data() + i * words; }
  const uint64_t* row(size_t i) const { return bits.data() + i * words; }
  void set(size_t i, size_t j) { row(i)[j >> 6] |= uint64_t(1) << (j & 63); }
};

}  // namespace

ColorState color_closure(const DeltaGraph& dg, const SpanningTree& tree,
                         WorklistOrder order) {
  ColorState cs;
  cs.blue.assign(dg.edges.size(), 0);

  const size_t n_x = size_t(dg.n_x);
  const size_t n_y = size_t(dg.n_y);
  // adjacency and blueness as bitsets on both sides
  BitRows delta_x_of_y(n_y, n_x), delta_y_of_x(n_x, n_y);
  for (auto [x, y] : dg.edges) {
    delta_x_of_y.set(size_t(y), size_t(x));
    delta_y_of_x.set(size_t(x), size_t(y));
  }
  BitRows blue_x_of_y(n_y, n_x), blue_y_of_x(n_x, n_y);
  // blue partner lists, appended at marking time so every processed edge sees
  // the complete current blue set
  std::vector<std::vector<int32_t>> blue_list_x(n_x);
  std::vector<std::vector<int32_t>> blue_list_y(n_y);
  std::deque<int32_t> work;

  auto mark = [&](int32_t eid, int32_t via_x, int32_t via_y, bool initial) {
    cs.blue[size_t(eid)] = 1;
    auto [x, y] = dg.edges[size_t(eid)];
    blue_x_of_y.set(size_t(y), size_t(x));
    blue_y_of_x.set(size_t(x), size_t(y));
    blue_list_x[size_t(x)].push_back(y);
    blue_list_y[size_t(y)].push_back(x);
    work.push_back(eid);
    if (!initial) {
      cs.trace.push_back({eid, via_x, via_y});
    }
  };

  for (int32_t eid : tree.edge_ids) {
    mark(eid, -1, -1, true);
  }

  auto mark_cell = [&](int32_t x, int32_t y, int32_t via_x, int32_t via_y) {
    mark(dg.edge_of_cell[size_t(y) * dg.n_x + x], via_x, via_y, false);
  };

  // targets = candidates & delta(line) & ~blue(line), walked bit by bit
  std::vector<uint64_t> scratch(std::max(delta_x_of_y.words, delta_y_of_x.words));
  auto sweep = [&](const uint64_t* candidates, const uint64_t* delta_line,
                   const uint64_t* blue_line, size_t words, auto&& on_target) {
    for (size_t w = 0; w < words; ++w) {
      uint64_t hits = candidates[w] & delta_line[w] & ~blue_line[w];
      while (hits) {
        int32_t id = int32_t(w * 64 + size_t(__builtin_ctzll(hits)));
        on_target(id);
        hits &= hits - 1;
      }
    }
  };

  while (!work.empty()) {
    int32_t eid;
    if (order == WorklistOrder::kFifo) {
      eid = work.front();
      work.pop_front();
    } else {
      eid = work.back();
      work.pop_back();
    }
    ++cs.steps;
    auto [x, y] = dg.edges[size_t(eid)];
    // the square's red edge can sit opposite the new blue edge: reds (x', y')
    // with (x, y') and (x', y) blue
    for (size_t i = 0; i < blue_list_x[size_t(x)].size(); ++i) {
      int32_t yp = blue_list_x[size_t(x)][i];
      if (yp == y) continue;
      sweep(blue_x_of_y.row(size_t(y)), delta_x_of_y.row(size_t(yp)),
            blue_x_of_y.row(size_t(yp)), delta_x_of_y.words,
            [&](int32_t xp) { mark_cell(xp, yp, x, y); });
    }
    // or share its X corner: reds (x, y') with (x', y) and (x', y') blue
    for (size_t i = 0; i < blue_list_y[size_t(y)].size(); ++i) {
      int32_t xp = blue_list_y[size_t(y)][i];
      if (xp == x) continue;
      sweep(blue_y_of_x.row(size_t(xp)), delta_y_of_x.row(size_t(x)),
            blue_y_of_x.row(size_t(x)), delta_y_of_x.words,
            [&](int32_t yp) {
              if (yp != y) mark_cell(x, yp, xp, y);
            });
    }
    // or share its Y corner: reds (x', y) with (x, y') and (x', y') blue
    for (size_t i = 0; i < blue_list_x[size_t(x)].size(); ++i) {
      int32_t yp = blue_list_x[size_t(x)][i];
      if (yp == y) continue;
      sweep(blue_x_of_y.row(size_t(yp)), delta_x_of_y.row(size_t(y)),
            blue_x_of_y.row(size_t(y)), delta_x_of_y.words,
            [&](int32_t xp) {
              if (xp != x) mark_cell(xp, y, x, yp);
            });
    }
  }

  cs.all_blue = true;
  for (uint8_t b : cs.blue) {
    if (!b) {
      cs.all_blue = false;
      break;
    }
  }
  return cs;
}

bool replay_trace(const ProductTable& P, const DeltaGraph& dg,
                  const SpanningTree& tree, const std::vector<TraceStep>& trace,
                  std::string* err) {
  auto fail = [&](size_t step, const std::string& why) {
    if (err) {
      *err = "trace step " + std::to_string(step) + ": " + why;
    }
    return false;
  };
  std::vector<uint8_t> blue(dg.edges.size(), 0);
  for (int32_t eid : tree.edge_ids) {
    blue[size_t(eid)] = 1;
  }
  for (size_t s = 0; s < trace.size(); ++s) {
    const TraceStep& st = trace[s];
    if (st.edge < 0 || size_t(st.edge) >= dg.edges.size()) {
      return fail(s, "edge id out of range");
    }
    auto [x, y] = dg.edges[size_t(st.edge)];
    int32_t xp = st.via_x;
    int32_t yp = st.via_y;
    if (xp < 0 || xp >= dg.n_x || yp < 0 || yp >= dg.n_y || xp == x || yp == y) {
      return fail(s, "witness corner invalid or degenerate");
    }
    int32_t e_op = dg.edge_id(xp, yp);
    int32_t e_xy = dg.edge_id(x, yp);
    int32_t e_px = dg.edge_id(xp, y);
    if (e_op < 0 || e_xy < 0 || e_px < 0) {
      return fail(s, "witness square is not a square of the graph");
    }
    if (!blue[size_t(e_op)] || !blue[size_t(e_xy)] || !blue[size_t(e_px)]) {
      return fail(s, "witness square cites an edge that is not yet blue");
    }
    // all four cells must be identity cells of P
    if (P.cell(y, x) != P.identity_vid || P.cell(yp, x) != P.identity_vid
        || P.cell(y, xp) != P.identity_vid || P.cell(yp, xp) != P.identity_vid) {
      return fail(s, "witness square has a non-identity cell");
    }
    if (blue[size_t(st.edge)]) {
      return fail(s, "edge already blue");
    }
    blue[size_t(st.edge)] = 1;
  }
  return true;
}

std::string trace_to_text(const DeltaGraph& dg, const std::vector<TraceStep>& trace) {
  std::string out;
  for (const TraceStep& st : trace) {
    auto [x, y] = dg.edges[size_t(st.edge)];
    out += "new " + std::to_string(x) + " " + std::to_string(y) + " via "
           + std::to_string(st.via_x) + " " + std::to_string(st.via_y) + "\n";
  }
  return out;
}

std::vector<TraceStep> trace_from_text(const DeltaGraph& dg, const std::string& text) {
  std::vector<TraceStep> trace;
  std::istringstream in(text);
  std::string kw_new, kw_via;
  int32_t x, y, vx, vy;
  while (in >> kw_new >> x >> y >> kw_via >> vx >> vy) {
    if (kw_new != "new" || kw_via != "via") {
      throw std::invalid_argument("bad trace line");
    }
    int32_t eid = dg.edge_id(x, y);
    if (eid < 0) {
      throw std::invalid_argument("trace references a non-edge");
    }
    trace.push_back({eid, vx, vy});
  }
  return trace;
}

std::string delta_to_dot(const RankedSet& ys, const DeltaGraph& dg,
                         const SpanningTree& tree) {
  std::vector<TreeTag> tag_of_edge(dg.edges.size(), TreeTag(0));
  for (size_t t = 0; t < tree.edge_ids.size(); ++t) {
    tag_of_edge[size_t(tree.edge_ids[t])] = tree.tags[t];
  }
  std::ostringstream out;
  out << "graph delta {\n"
      << "  rankdir=TB;\n"
      << "  node [shape=point];\n";
  for (int32_t x = 0; x < dg.n_x; ++x) {
    out << "  x" << x << " [label=\"X" << x << "\" comment=\""
        << ys.region(x).to_string() << "\"];\n";
  }
  for (int32_t y = 0; y < dg.n_y; ++y) {
    out << "  y" << y << " [label=\"Y" << y << "\" comment=\""
        << ys.region(y).to_string() << "\"];\n";
  }
  for (size_t e = 0; e < dg.edges.size(); ++e) {
    auto [x, y] = dg.edges[e];
    out << "  x" << x << " -- y" << y;
    switch (tag_of_edge[e]) {
      case TreeTag::kT1:
        out << " [tag=\"T1\"]";
        break;
      case TreeTag::kT2:
        out << " [tag=\"T2\", style=dashed]";
        break;
      case TreeTag::kT1T2:
        out << " [tag=\"T1 T2\"]";
        break;
      case TreeTag::kT3:
        out << " [tag=\"T3\", style=bold]";
        break;
      default:
        out << " [color=gray]";
        break;
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace igcert
