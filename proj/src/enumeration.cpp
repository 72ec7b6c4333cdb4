#include "igcert/enumeration.hpp"

#include <stdexcept>

namespace igcert {

int32_t RankedSet::region_index(const SubsetR& s) const {
  auto it = std::lower_bound(regions.begin(), regions.end(), s);
  if (it == regions.end() || !(*it == s)) return -1;
  return int32_t(it - regions.begin());
}

int32_t RankedSet::id_of_y(const Mat& m) const {
  if (index_.empty() && !y_mats.empty()) {
    index_.reserve(y_mats.size());
    for (size_t i = 0; i < y_mats.size(); ++i) {
      index_.emplace(y_mats[i], int32_t(i));
    }
  }
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

RankedSet enumerate_Y(int n, int r, FieldRef field) {
  if (r < 1 || r > n) {
    throw std::invalid_argument("enumerate_Y requires 1 <= r <= n");
  }
  RankedSet out;
  out.n = n;
  out.r = r;
  out.field = field;
  out.regions = subsets_lex(n, r);
  const uint32_t q = field->q;

  for (size_t ri = 0; ri < out.regions.size(); ++ri) {
    const SubsetR& s = out.regions[ri];
    // free positions: row j, column c with c > i_j and c not a leading column
    std::vector<std::pair<int, int>> free_pos;
    for (int j = 0; j < r; ++j) {
      for (int c = s.idx[j] + 1; c <= n; ++c) {
        if (!s.contains(c)) {
          free_pos.emplace_back(j, c - 1);
        }
      }
    }
    Mat base = scattered_identity(field, n, s);
    int32_t begin = out.count();
    std::vector<uint8_t> codes(free_pos.size(), 0);
    while (true) {
      Mat m = base;
      for (size_t t = 0; t < free_pos.size(); ++t) {
        m.set(free_pos[t].first, free_pos[t].second, {codes[t]});
      }
      out.y_mats.push_back(m);
      out.x_mats.push_back(transpose(m));
      out.region_of.push_back(int32_t(ri));
      // odometer, last position fastest: lexicographic in the code vector
      size_t t = codes.size();
      while (t > 0 && codes[t - 1] == q - 1) {
        codes[t - 1] = 0;
        --t;
      }
      if (t == 0) break;
      ++codes[t - 1];
    }
    out.region_span.emplace_back(begin, out.count());
  }
  return out;
}

bool is_minimal_subset(const SubsetR& s) {
  for (size_t m = 0; m < s.size(); ++m) {
    if (s.idx[m] != int(m) + 1) return false;
  }
  return true;
}

SubsetR hasse_parent(const SubsetR& s) {
  std::vector<int> v = s.idx;
  for (size_t m = 0; m < v.size(); ++m) {
    if (v[m] != int(m) + 1) {
      --v[m];
      return SubsetR(v);
    }
  }
  throw std::invalid_argument("hasse_parent called on the minimum {1..r}");
}

bool preceq(const SubsetR& s, const SubsetR& t) {
  if (s.size() != t.size()) {
    throw std::invalid_argument("preceq: subsets of different sizes");
  }
  SubsetR cur = t;
  while (true) {
    if (cur == s) return true;
    if (is_minimal_subset(cur)) return false;
    cur = hasse_parent(cur);
  }
}

}  // namespace igcert
