#ifndef IGCERT_SRC_UNION_FIND_HPP_
#define IGCERT_SRC_UNION_FIND_HPP_

#include <cstdint>
#include <numeric>
#include <vector>

namespace igcert {

struct UnionFind {
  std::vector<int32_t> parent;

  explicit UnionFind(int32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int32_t find(int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  // true when the two were in different components
  bool unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace igcert

#endif  // IGCERT_SRC_UNION_FIND_HPP_
