#ifndef IGCERT_DELTAGRAPH_HPP_
#define IGCERT_DELTAGRAPH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "igcert/tables.hpp"

namespace igcert {

// Bipartite graph on X_r u Y_r whose edges are exactly the identity cells of
// the structure matrix: (X, Y) is an edge iff P_r(Y, X) = I_r.
struct DeltaGraph {
  int32_t n_x = 0;
  int32_t n_y = 0;
  std::vector<std::pair<int32_t, int32_t>> edges;  // (x, y), row-major cell order
  std::vector<std::vector<int32_t>> adj_x;         // x -> incident edge ids
  std::vector<std::vector<int32_t>> adj_y;         // y -> incident edge ids
  std::vector<int32_t> edge_of_cell;               // y * n_x + x -> edge id or -1

  int32_t edge_id(int32_t x, int32_t y) const {
    return edge_of_cell[size_t(y) * n_x + x];
  }
  int64_t edge_count() const { return int64_t(edges.size()); }
};

DeltaGraph build_delta(const ProductTable& P);

enum class TreeTag : uint8_t { kT1 = 1, kT2 = 2, kT1T2 = 3, kT3 = 4 };

// Spanning tree T_{n,r} of the bipartite graph, spanned by
//   (T1) (I(region)^T, Y) for every Y,
//   (T2) (X, I(region))   for every X,
//   (T3) one edge from each non-minimal diagonal region to its predecessor
//        region, through I(i_1|...|i_{j-1}|i_j-1,i_j|i_{j+1}|...|i_r).
// Size, acyclicity and coverage are verified at build time.
struct SpanningTree {
  std::vector<int32_t> edge_ids;  // into DeltaGraph.edges
  std::vector<TreeTag> tags;      // parallel to edge_ids
  std::vector<uint8_t> in_tree;   // per delta edge id
};

SpanningTree build_spanning_tree(const RankedSet& ys, const DeltaGraph& dg);

// One elementary edge colour transformation: the fourth edge of a square
// turned blue, witnessed by its opposite corner.  The cited blue edges are
// (via_x, via_y), (x, via_y), (via_x, y) for the new edge (x, y).
struct TraceStep {
  int32_t edge;
  int32_t via_x;
  int32_t via_y;
};

struct ColorState {
  std::vector<uint8_t> blue;      // per delta edge id, only ever grows
  std::vector<TraceStep> trace;   // replayable certificate of the closure
  bool all_blue = false;
  int64_t steps = 0;
};

enum class WorklistOrder : uint8_t { kFifo, kLifo };

// Runs the elementary edge colour transformation to its fixed point starting
// from the spanning tree.  The fixed point is order-independent; the order
// only affects the trace.
ColorState color_closure(const DeltaGraph& dg, const SpanningTree& tree,
                         WorklistOrder order = WorklistOrder::kFifo);

// Independent check of a closure trace: every step must cite three edges that
// are already blue and four cells equal to I_r in P.  Returns false at the
// first failing step (reported through err when given).
bool replay_trace(const ProductTable& P, const DeltaGraph& dg,
                  const SpanningTree& tree, const std::vector<TraceStep>& trace,
                  std::string* err = nullptr);

std::string trace_to_text(const DeltaGraph& dg, const std::vector<TraceStep>& trace);
std::vector<TraceStep> trace_from_text(const DeltaGraph& dg, const std::string& text);

// DOT rendering of the bipartite graph with the tree edges styled by tag
// (T1 solid, T2 dashed, T3 bold; non-tree edges gray).
std::string delta_to_dot(const RankedSet& ys, const DeltaGraph& dg,
                         const SpanningTree& tree);

}  // namespace igcert

#endif  // IGCERT_DELTAGRAPH_HPP_
