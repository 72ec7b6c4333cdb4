#ifndef IGCERT_PRESENTATION_HPP_
#define IGCERT_PRESENTATION_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "igcert/connectivity.hpp"
#include "igcert/deltagraph.hpp"
#include "igcert/squares.hpp"
#include "igcert/tables.hpp"

namespace igcert {

// A stage precondition failed or a run contradicted the expected structure.
struct StageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The maximal-subgroup presentation: one generator per nonzero cell of the
// structure matrix, a unit relation per spanning-tree edge, and the square
// relations f_{X,Y}^{-1} f_{X,Y'} = f_{X',Y}^{-1} f_{X',Y'} as an implicit
// family over all singular squares, validated on demand.  Only squares cited
// by certificates are ever materialized.
struct Presentation {
  int n = 0;
  int r = 0;
  uint32_t q = 0;
  std::vector<int64_t> gen_cell;     // gen id -> cell (row-major in P)
  std::vector<int32_t> gen_of_cell;  // cell -> gen id, -1 on zero cells
  std::vector<int32_t> tree_gens;    // generators with unit relations, tree order

  int64_t n_generators() const { return int64_t(gen_cell.size()); }
  int32_t gen_at(int64_t row, int64_t col, int64_t n_cols) const {
    return gen_of_cell[size_t(row * n_cols + col)];
  }
};

Presentation build_presentation(const ProductTable& P, const DeltaGraph& dg,
                                const SpanningTree& tree);

// Union-find over generators with a distinguished identity class (seeded by
// Stage 1) and class labels in GL_r (established by Stage 2).  Uniting two
// differently-labeled classes is an over-collapse and throws.
class ClassMap {
 public:
  explicit ClassMap(int64_t n_gens);

  int32_t find(int32_t gen) const;
  bool unite(int32_t a, int32_t b);
  int64_t size() const { return int64_t(parent_.size()); }
  int64_t n_classes() const;

  void seed_identity(int32_t gen);
  bool has_identity() const { return identity_gen_ >= 0; }
  int32_t identity_root() const;
  bool in_identity_class(int32_t gen) const;

  void set_label(int32_t gen, const std::string& value_digits);
  const std::string* label_of(int32_t gen) const;  // nullptr when unlabeled
  int64_t n_labeled_classes() const;

 private:
  mutable std::vector<int32_t> parent_;
  int32_t identity_gen_ = -1;
  std::unordered_map<int32_t, std::string> labels_;  // root -> value digits
};

// Elementary transformation in vertex coordinates, self-contained for replay.
struct TraceXY {
  int32_t x, y;
  int32_t via_x, via_y;
};

// The replayable evidence that the presentation collapses to GL_r(F_q):
// Stage-1 closure trace, Stage-2 strong forests per value, Stage-3
// multiplication squares.  Every union any stage performs is justified by
// one recorded square.
struct CertificateChain {
  int n = 0;
  int r = 0;
  uint32_t q = 0;
  uint64_t seed = 0;

  // stage 1
  std::vector<std::pair<int32_t, int32_t>> tree_edges;  // (x, y)
  std::vector<TraceXY> trace;
  bool stage1_all_blue = false;
  int64_t delta_edges = 0;

  // stage 2
  struct Stage2Value {
    std::string value_digits;          // the rank-r value K
    std::vector<int64_t> cells;        // all occurrences, row-major order
    std::vector<StrongForest::Edge> edges;  // strong spanning forest
    int32_t components = 0;
    StrongPath sample_path;            // representative -> farthest listed cell
  };
  std::vector<Stage2Value> stage2;

  // stage 3
  struct Stage3Entry {
    std::string a_digits, b_digits, ab_digits;
    SingularSquare ids;
  };
  std::vector<Stage3Entry> stage3;
};

// Stage 1: after the all-blue closure, every identity cell's generator joins
// the identity class; the closure trace is the justification (each step is a
// square relation on an all-identity square).
void run_stage1(const Presentation& pres, const DeltaGraph& dg,
                const SpanningTree& tree, const ColorState& color,
                ClassMap& classes, CertificateChain& chain);

// Stage 2: for every occurring rank-r value K, all cells of value K are
// united, justified by strong paths in the full table whose witness cells
// lie in the identity class.  Classes are then labeled by their value.
void run_stage2(const Presentation& pres, const ProductTable& P,
                const ProductTable& t_full, ClassMap& classes,
                CertificateChain& chain);

// Stage 3: for every pair (A, B) in GL_r^2 the explicit square certifies the
// relation f_B f_A = f_{AB} among class representatives.
void run_stage3(const Presentation& pres, const RankedSet& ys,
                const ProductTable& P, const ClassMap& classes,
                CertificateChain& chain);

// Independent verification of the whole chain from raw matrices: recomputes
// every product it touches with matmul, checks every cited square through
// the rectangular-band identity, and rebuilds the class structure with its
// own union-find.  Never reads a ProductTable.
struct ReplayReport {
  bool ok = false;
  std::string error;
  int64_t identity_cells = 0;    // recomputed
  int64_t stage1_steps = 0;
  int64_t stage2_edges = 0;
  int64_t stage3_squares = 0;
  int64_t squares_checked = 0;   // total cited squares re-verified
  int64_t nonzero_cells = 0;
  int64_t classes = 0;           // recomputed class count over nonzero cells
};

ReplayReport replay_chain(const CertificateChain& chain, const RankedSet& ys);

struct SoundnessReport {
  bool tree_relations_ok = false;      // every tree cell maps to (YX)^{-1} = I_r
  bool squares_ok = false;             // every cited square passes eq-(4) re-check
  int64_t squares_checked = 0;
  bool class_count_ok = false;         // classes == |GL_r(F_q)|
  bool labels_bijective = false;       // distinct invertible labels, one per class
  bool multiplication_closed = false;  // Stage 3 covers all of GL_r x GL_r
  bool certified = false;
  std::string first_error;
};

SoundnessReport check_soundness(const Presentation& pres, const RankedSet& ys,
                                const ClassMap& classes,
                                const CertificateChain& chain);

enum class ExportMode { kTreeOnly, kCertificateSquares, kFullEnumeration };

// Line-oriented presentation file:
//   p <n> <r> <q>
//   gen <id> <xid> <yid> <value-digits>
//   rel unit <id>
//   rel square <id1> <id2> <id3> <id4>
// where the square line states f1^{-1} f2 = f3^{-1} f4 with (id1, id2)
// sharing X and (id3, id4) sharing X'.
std::string export_presentation(const Presentation& pres, const ProductTable& P,
                                ExportMode mode,
                                const CertificateChain* chain = nullptr,
                                int64_t square_cap = 1'000'000);

struct ParsedPresentation {
  int n = 0, r = 0;
  uint32_t q = 0;
  struct Gen {
    int64_t id;
    int32_t x, y;
    std::string value_digits;
  };
  std::vector<Gen> gens;
  std::vector<int64_t> unit_rels;
  std::vector<std::array<int64_t, 4>> square_rels;
};

ParsedPresentation parse_presentation(const std::string& text);

}  // namespace igcert

#endif  // IGCERT_PRESENTATION_HPP_
