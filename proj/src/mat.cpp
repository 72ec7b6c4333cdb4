#include "igcert/mat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace igcert {

namespace {

char hex_digit(uint8_t v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

uint8_t from_hex(char c) {
  if (c >= '0' && c <= '9') return uint8_t(c - '0');
  if (c >= 'a' && c <= 'f') return uint8_t(10 + c - 'a');
  if (c >= 'A' && c <= 'F') return uint8_t(10 + c - 'A');
  throw std::invalid_argument(std::string("bad matrix digit '") + c + "'");
}

void require_same_field(const Mat& a, const Mat& b) {
  if (a.ctx().q != b.ctx().q) {
    throw std::invalid_argument("matrices over different fields");
  }
}

}  // namespace

SubsetR::SubsetR(std::vector<int> v) : idx(std::move(v)) {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || (i > 0 && idx[i] <= idx[i - 1])) {
      throw std::invalid_argument("subset indices must be strictly increasing and >= 1");
    }
  }
}

bool SubsetR::contains(int i) const {
  return std::binary_search(idx.begin(), idx.end(), i);
}

std::string SubsetR::to_string() const {
  std::string s = "{";
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + "}";
}

std::vector<SubsetR> subsets_lex(int n, int r) {
  std::vector<SubsetR> out;
  if (r < 0 || r > n) {
    return out;
  }
  std::vector<int> cur(r);
  for (int i = 0; i < r; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(SubsetR(cur));
    int j = r - 1;
    while (j >= 0 && cur[j] == n - (r - 1 - j)) --j;
    if (j < 0) break;
    ++cur[j];
    for (int l = j + 1; l < r; ++l) cur[l] = cur[l - 1] + 1;
  }
  return out;
}

Mat::Mat(FieldRef field, int rows, int cols)
    : rows_(rows), cols_(cols), field_(std::move(field)), e_(size_t(rows) * cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
}

Mat Mat::identity(FieldRef field, int n) {
  Mat m(std::move(field), n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, m.ctx().one());
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (size_t i = 0; i < a.e_.size(); ++i) {
    if (a.e_[i].code != b.e_[i].code) return false;
  }
  return true;
}

size_t MatHash::operator()(const Mat& m) const {
  // FNV-1a over dimensions and codes
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(uint64_t(m.rows()));
  mix(uint64_t(m.cols()));
  const Fq* p = m.data();
  for (size_t i = 0, n = size_t(m.rows()) * m.cols(); i < n; ++i) {
    mix(p[i].code);
  }
  return size_t(h);
}

Mat matmul(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch");
  }
  const FieldCtx& F = a.ctx();
  Mat out(a.field(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      uint8_t aik = a.at(i, k).code;
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        uint8_t prod = F.mul_code(aik, b.at(k, j).code);
        out.set(i, j, {F.add_code(out.at(i, j).code, prod)});
      }
    }
  }
  return out;
}

Mat transpose(const Mat& m) {
  Mat out(m.field(), m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      out.set(j, i, m.at(i, j));
    }
  }
  return out;
}

Mat rre(const Mat& m) {
  const FieldCtx& F = m.ctx();
  Mat a = m;
  int pivot_row = 0;
  for (int col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    int sel = -1;
    for (int i = pivot_row; i < a.rows(); ++i) {
      if (a.at(i, col).code != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != pivot_row) {
      for (int j = 0; j < a.cols(); ++j) {
        Fq t = a.at(sel, j);
        a.set(sel, j, a.at(pivot_row, j));
        a.set(pivot_row, j, t);
      }
    }
    Fq scale = F.inv(a.at(pivot_row, col));
    for (int j = col; j < a.cols(); ++j) {
      a.set(pivot_row, j, F.mul(scale, a.at(pivot_row, j)));
    }
    for (int i = 0; i < a.rows(); ++i) {
      if (i == pivot_row) continue;
      Fq f = a.at(i, col);
      if (f.code == 0) continue;
      for (int j = col; j < a.cols(); ++j) {
        a.set(i, j, F.sub(a.at(i, j), F.mul(f, a.at(pivot_row, j))));
      }
    }
    ++pivot_row;
  }
  return a;
}

int rank(const Mat& m) {
  Mat r = rre(m);
  int rk = 0;
  for (int i = 0; i < r.rows(); ++i) {
    bool nonzero = false;
    for (int j = 0; j < r.cols(); ++j) {
      if (r.at(i, j).code != 0) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) ++rk;
  }
  return rk;
}

bool is_rre(const Mat& m) {
  int prev_lead = -1;
  bool seen_zero_row = false;
  for (int i = 0; i < m.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).code != 0) {
        lead = j;
        break;
      }
    }
    if (lead < 0) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;        // nonzero row below a zero row
    if (lead <= prev_lead) return false;    // pivots must move strictly right
    if (m.at(i, lead).code != 1) return false;
    for (int k = 0; k < m.rows(); ++k) {
      if (k != i && m.at(k, lead).code != 0) return false;
    }
    prev_lead = lead;
  }
  return true;
}

SubsetR leading_cols(const Mat& m) {
  if (!is_rre(m)) {
    throw std::invalid_argument("leading_cols: matrix is not in RRE form");
  }
  std::vector<int> lead;
  for (int i = 0; i < m.rows(); ++i) {
    int l = -1;
    for (int j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).code != 0) {
        l = j;
        break;
      }
    }
    if (l < 0) {
      throw std::invalid_argument("leading_cols: matrix has a zero row");
    }
    lead.push_back(l + 1);
  }
  return SubsetR(lead);
}

Mat scattered_identity(FieldRef field, int n, const SubsetR& s) {
  if (!s.idx.empty() && s.idx.back() > n) {
    throw std::invalid_argument("scattered_identity: index exceeds n");
  }
  Mat m(field, int(s.size()), n);
  for (size_t j = 0; j < s.size(); ++j) {
    m.set(int(j), s.idx[j] - 1, m.ctx().one());
  }
  return m;
}

Mat scattered_identity_sets(FieldRef field, int n,
                            const std::vector<std::vector<int>>& groups) {
  std::vector<bool> used(size_t(n) + 1, false);
  Mat m(field, int(groups.size()), n);
  for (size_t j = 0; j < groups.size(); ++j) {
    for (int a : groups[j]) {
      if (a < 1 || a > n) {
        throw std::invalid_argument("scattered_identity_sets: index out of range");
      }
      if (used[a]) {
        throw std::invalid_argument("scattered_identity_sets: sets overlap");
      }
      used[a] = true;
      m.set(int(j), a - 1, m.ctx().one());
    }
  }
  return m;
}

bool row_space_equal(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("row_space_equal: ambient dimensions differ");
  }
  Mat ra = rre(a);
  Mat rb = rre(b);
  // compare nonzero rows only; row counts may differ
  int na = rank(a), nb = rank(b);
  if (na != nb) return false;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (ra.at(i, j) != rb.at(i, j)) return false;
    }
  }
  return true;
}

bool col_space_equal(const Mat& a, const Mat& b) {
  return row_space_equal(transpose(a), transpose(b));
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("inverse: matrix not square");
  }
  const FieldCtx& F = m.ctx();
  int n = m.rows();
  Mat a = m;
  Mat inv = Mat::identity(m.field(), n);
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i) {
      if (a.at(i, col).code != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) {
      throw std::invalid_argument("inverse: singular matrix");
    }
    if (sel != col) {
      for (int j = 0; j < n; ++j) {
        Fq t = a.at(sel, j);
        a.set(sel, j, a.at(col, j));
        a.set(col, j, t);
        t = inv.at(sel, j);
        inv.set(sel, j, inv.at(col, j));
        inv.set(col, j, t);
      }
    }
    Fq scale = F.inv(a.at(col, col));
    for (int j = 0; j < n; ++j) {
      a.set(col, j, F.mul(scale, a.at(col, j)));
      inv.set(col, j, F.mul(scale, inv.at(col, j)));
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      Fq f = a.at(i, col);
      if (f.code == 0) continue;
      for (int j = 0; j < n; ++j) {
        a.set(i, j, F.sub(a.at(i, j), F.mul(f, a.at(col, j))));
        inv.set(i, j, F.sub(inv.at(i, j), F.mul(f, inv.at(col, j))));
      }
    }
  }
  return inv;
}

Mat idempotent_of(const Mat& X, const Mat& Y) {
  Mat yx = matmul(Y, X);
  return matmul(matmul(X, inverse(yx)), Y);
}

std::string mat_to_text(const Mat& m) {
  if (m.ctx().q > 16) {
    throw std::invalid_argument("text serialization requires q <= 16");
  }
  std::string s = std::to_string(m.rows()) + " " + std::to_string(m.cols())
                  + " " + std::to_string(m.ctx().q) + " :";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      s += ' ';
      s += hex_digit(m.at(i, j).code);
    }
  }
  return s;
}

Mat mat_from_text(FieldRef field, const std::string& text) {
  std::istringstream in(text);
  int rows, cols;
  uint32_t q;
  std::string colon;
  if (!(in >> rows >> cols >> q >> colon) || colon != ":") {
    throw std::invalid_argument("bad matrix text header");
  }
  if (q != field->q) {
    throw std::invalid_argument("matrix text field mismatch");
  }
  Mat m(field, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::string d;
      if (!(in >> d) || d.size() != 1) {
        throw std::invalid_argument("bad matrix text entry");
      }
      m.set(i, j, field->element(from_hex(d[0])));
    }
  }
  return m;
}

std::string mat_digits(const Mat& m) {
  if (m.ctx().q > 16) {
    throw std::invalid_argument("digit serialization requires q <= 16");
  }
  std::string s;
  s.reserve(size_t(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      s += hex_digit(m.at(i, j).code);
    }
  }
  return s;
}

Mat mat_from_digits(FieldRef field, int rows, int cols, const std::string& digits) {
  if (digits.size() != size_t(rows) * cols) {
    throw std::invalid_argument("digit string length does not match dimensions");
  }
  Mat m(field, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m.set(i, j, field->element(from_hex(digits[size_t(i) * cols + j])));
    }
  }
  return m;
}

}  // namespace igcert
