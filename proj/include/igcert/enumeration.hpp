#ifndef IGCERT_ENUMERATION_HPP_
#define IGCERT_ENUMERATION_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "igcert/mat.hpp"

namespace igcert {

// The enumerated set Y_r of all r x n rank-r RRE matrices over F_q, together
// with X_r (their transposes) under the same ids.  Ids are assigned in a
// fixed order: regions (= leading column sets) lexicographically, then free
// entries as a row-major odometer, so certificates referencing ids are
// reproducible across runs and platforms.
class RankedSet {
 public:
  int n = 0;
  int r = 0;
  FieldRef field;

  std::vector<Mat> y_mats;                       // id -> r x n RRE matrix
  std::vector<Mat> x_mats;                       // id -> transpose(y_mats[id])
  std::vector<int32_t> region_of;                // id -> region index
  std::vector<SubsetR> regions;                  // region index -> subset, lex order
  std::vector<std::pair<int32_t, int32_t>> region_span;  // region -> [begin, end) ids

  int32_t count() const { return int32_t(y_mats.size()); }
  const Mat& y(int32_t id) const { return y_mats[id]; }
  const Mat& x(int32_t id) const { return x_mats[id]; }
  const SubsetR& region(int32_t id) const { return regions[region_of[id]]; }

  int32_t region_index(const SubsetR& s) const;  // -1 when absent

  // Id of the scattered identity I(region); first id of the region's span.
  int32_t diagonal_id(int32_t region_idx) const { return region_span[region_idx].first; }

  int32_t id_of_y(const Mat& m) const;  // -1 when m is not an enumerated Y
  int32_t id_of_x(const Mat& m) const { return id_of_y(transpose(m)); }

 private:
  friend RankedSet enumerate_Y(int n, int r, FieldRef field);
  mutable std::unordered_map<Mat, int32_t, MatHash> index_;
};

// Enumerates Y_r directly region by region: for each leading-column set the
// free entries are exactly the positions right of a pivot and outside all
// leading columns, so each region contributes q^(free count) matrices and no
// enumerate-and-filter pass over all r x n matrices is ever needed.
RankedSet enumerate_Y(int n, int r, FieldRef field);

// The unique subset covered by s in the Hasse tree of the precedence order:
// decrement a_m at the smallest index m with a_m != m.  Throws on the
// minimum {1..r}.
SubsetR hasse_parent(const SubsetR& s);

bool is_minimal_subset(const SubsetR& s);

// True iff s precedes t, i.e. s = t or s is an ancestor of t in the Hasse
// tree rooted at {1..r}.
bool preceq(const SubsetR& s, const SubsetR& t);

}  // namespace igcert

#endif  // IGCERT_ENUMERATION_HPP_
