#include "twosegal/fqvect.hpp"

#include <algorithm>
#include <stdexcept>

namespace twosegal {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int mod_norm(long long v, int q) {
  long long r = v % q;
  if (r < 0) r += q;
  return static_cast<int>(r);
}

// Multiplicative inverse by search; q is desk-scale.  Rejects non-units, so
// composite moduli fail loudly instead of corrupting an elimination.
int unit_inverse(int q, int x) {
  x = mod_norm(x, q);
  for (int y = 1; y < q; ++y) {
    if (x * y % q == 1) return y;
  }
  throw std::invalid_argument("no inverse for " + std::to_string(x) +
                              " mod " + std::to_string(q));
}

}  // namespace

Mat::Mat(int rows, int cols)
    : rows(rows), cols(cols), a(static_cast<size_t>(rows * cols), 0) {
  require(rows >= 0 && cols >= 0, "matrix shape must be nonnegative");
}

Mat::Mat(int rows, int cols, std::vector<int> entries)
    : rows(rows), cols(cols), a(std::move(entries)) {
  require(rows >= 0 && cols >= 0, "matrix shape must be nonnegative");
  require(a.size() == static_cast<size_t>(rows * cols),
          "entry count does not match the matrix shape");
}

Mat mat_identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(int q, const Mat& a, const Mat& b) {
  require(a.cols == b.rows, "matrix product shape mismatch");
  Mat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      int aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) {
        c.at(i, j) = mod_norm(c.at(i, j) + static_cast<long long>(aik) * b.at(k, j), q);
      }
    }
  }
  return c;
}

Mat mat_add(int q, const Mat& a, const Mat& b) {
  require(a.rows == b.rows && a.cols == b.cols, "matrix sum shape mismatch");
  Mat c(a.rows, a.cols);
  for (size_t i = 0; i < c.a.size(); ++i) c.a[i] = mod_norm(a.a[i] + b.a[i], q);
  return c;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  }
  return t;
}

EchelonForm reduced_echelon(int q, const Mat& m) {
  EchelonForm e;
  e.reduced = m;
  Mat& r = e.reduced;
  for (auto& v : r.a) v = mod_norm(v, q);
  int row = 0;
  for (int col = 0; col < r.cols && row < r.rows; ++col) {
    int pr = -1;
    for (int i = row; i < r.rows; ++i) {
      if (r.at(i, col) != 0) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    for (int j = 0; j < r.cols; ++j) std::swap(r.at(pr, j), r.at(row, j));
    int inv = unit_inverse(q, r.at(row, col));
    for (int j = col; j < r.cols; ++j) {
      r.at(row, j) = mod_norm(static_cast<long long>(r.at(row, j)) * inv, q);
    }
    for (int i = 0; i < r.rows; ++i) {
      if (i == row || r.at(i, col) == 0) continue;
      int f = r.at(i, col);
      for (int j = col; j < r.cols; ++j) {
        r.at(i, j) =
            mod_norm(r.at(i, j) - static_cast<long long>(f) * r.at(row, j), q);
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

int rank(int q, const Mat& m) { return reduced_echelon(q, m).rank; }

bool is_injective(int q, const Mat& m) { return rank(q, m) == m.cols; }

bool is_invertible(int q, const Mat& m) {
  return m.rows == m.cols && rank(q, m) == m.rows;
}

Mat inverse(int q, const Mat& m) {
  require(m.rows == m.cols, "only square matrices invert");
  int n = m.rows;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = mod_norm(m.at(i, j), q);
    aug.at(i, n + i) = 1;
  }
  EchelonForm e = reduced_echelon(q, aug);
  require(e.rank == n && (n == 0 || e.pivots[static_cast<size_t>(n) - 1] < n),
          "matrix is singular");
  Mat inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  }
  return inv;
}

Mat kernel_basis(int q, const Mat& m) {
  EchelonForm e = reduced_echelon(q, m);
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int j = 0; j < m.cols; ++j) {
      if (pi < e.pivots.size() && e.pivots[pi] == j) {
        ++pi;
      } else {
        free_cols.push_back(j);
      }
    }
  }
  Mat k(static_cast<int>(free_cols.size()), m.cols);
  for (size_t f = 0; f < free_cols.size(); ++f) {
    k.at(static_cast<int>(f), free_cols[f]) = 1;
    for (size_t i = 0; i < e.pivots.size(); ++i) {
      k.at(static_cast<int>(f), e.pivots[i]) =
          mod_norm(-e.reduced.at(static_cast<int>(i), free_cols[f]), q);
    }
  }
  // Normalize so the rows themselves are a reduced-echelon basis.
  return reduced_echelon(q, k).reduced;
}

Mat solve(int q, const Mat& m, const Mat& rhs) {
  require(m.rows == rhs.rows, "solve shape mismatch");
  Mat aug(m.rows, m.cols + rhs.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = mod_norm(m.at(i, j), q);
    for (int j = 0; j < rhs.cols; ++j) {
      aug.at(i, m.cols + j) = mod_norm(rhs.at(i, j), q);
    }
  }
  EchelonForm e = reduced_echelon(q, aug);
  Mat x(m.cols, rhs.cols);
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    require(e.pivots[i] < m.cols, "inconsistent linear system");
    for (int j = 0; j < rhs.cols; ++j) {
      x.at(e.pivots[i], j) = e.reduced.at(static_cast<int>(i), m.cols + j);
    }
  }
  return x;
}

CanonicalQuotient canonical_cokernel(int q, const Mat& mono) {
  require(is_injective(q, mono), "cokernels are assigned to monos only");
  int c = mono.rows;
  int a = mono.cols;
  EchelonForm image = reduced_echelon(q, transpose(mono));
  std::vector<int> nonpivots;
  {
    size_t pi = 0;
    for (int j = 0; j < c; ++j) {
      if (pi < image.pivots.size() && image.pivots[pi] == j) {
        ++pi;
      } else {
        nonpivots.push_back(j);
      }
    }
  }
  CanonicalQuotient out;
  out.proj = Mat(c - a, c);
  out.section = Mat(c, c - a);
  for (int k = 0; k < c - a; ++k) {
    out.proj.at(k, nonpivots[static_cast<size_t>(k)]) = 1;
    out.section.at(nonpivots[static_cast<size_t>(k)], k) = 1;
    for (int i = 0; i < a; ++i) {
      out.proj.at(k, image.pivots[static_cast<size_t>(i)]) =
          mod_norm(-image.reduced.at(i, nonpivots[static_cast<size_t>(k)]), q);
    }
  }
  return out;
}

std::vector<Mat> enumerate_matrices(int q, int rows, int cols) {
  require(q >= 2, "field size must be at least 2");
  std::vector<Mat> out;
  Mat m(rows, cols);
  size_t n = m.a.size();
  while (true) {
    out.push_back(m);
    size_t i = n;
    while (i > 0) {
      --i;
      if (++m.a[i] < q) break;
      m.a[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<Mat> enumerate_injective(int q, int rows, int cols) {
  std::vector<Mat> out;
  for (const Mat& m : enumerate_matrices(q, rows, cols)) {
    if (is_injective(q, m)) out.push_back(m);
  }
  return out;
}

std::vector<Mat> enumerate_invertible(int q, int n) {
  return enumerate_injective(q, n, n);
}

std::vector<Mat> enumerate_subspace_bases(int q, int n, int k) {
  require(0 <= k && k <= n, "subspace dimension out of range");
  std::vector<Mat> out;
  std::vector<int> pivots(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pivots[static_cast<size_t>(i)] = i;
  while (true) {
    // Free entries sit right of their own pivot, off the other pivots.
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i) {
      for (int j = pivots[static_cast<size_t>(i)] + 1; j < n; ++j) {
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) {
          free_pos.emplace_back(i, j);
        }
      }
    }
    std::vector<int> fill(free_pos.size(), 0);
    while (true) {
      Mat b(k, n);
      for (int i = 0; i < k; ++i) b.at(i, pivots[static_cast<size_t>(i)]) = 1;
      for (size_t t = 0; t < free_pos.size(); ++t) {
        b.at(free_pos[t].first, free_pos[t].second) = fill[t];
      }
      out.push_back(b);
      size_t i = fill.size();
      while (i > 0) {
        --i;
        if (++fill[i] < q) break;
        fill[i] = 0;
        if (i == 0) fill.clear();
      }
      if (fill.empty()) break;
      if (free_pos.empty()) break;
    }
    // Next pivot combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pivots[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pivots[static_cast<size_t>(j)] = pivots[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<Mat> enumerate_symmetric_invertible(int q, int n) {
  std::vector<Mat> out;
  std::vector<std::pair<int, int>> upper;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) upper.emplace_back(i, j);
  }
  std::vector<int> fill(upper.size(), 0);
  while (true) {
    Mat m(n, n);
    for (size_t t = 0; t < upper.size(); ++t) {
      m.at(upper[t].first, upper[t].second) = fill[t];
      m.at(upper[t].second, upper[t].first) = fill[t];
    }
    if (is_invertible(q, m)) out.push_back(m);
    size_t i = fill.size();
    bool done = fill.empty();
    while (i > 0) {
      --i;
      if (++fill[i] < q) break;
      fill[i] = 0;
      if (i == 0) done = true;
    }
    if (done) break;
  }
  return out;
}

std::string to_payload(const Mat& m) {
  std::string s = std::to_string(m.rows) + "x" + std::to_string(m.cols) + ":";
  for (int v : m.a) {
    require(0 <= v && v <= 9, "payload entries must be single digits");
    s.push_back(static_cast<char>('0' + v));
  }
  return s;
}

Mat mat_from_payload(const std::string& s) {
  size_t x = s.find('x');
  size_t colon = s.find(':');
  require(x != std::string::npos && colon != std::string::npos && x < colon,
          "malformed matrix payload");
  int rows = std::stoi(s.substr(0, x));
  int cols = std::stoi(s.substr(x + 1, colon - x - 1));
  std::string digits = s.substr(colon + 1);
  require(digits.size() == static_cast<size_t>(rows * cols),
          "matrix payload entry count mismatch");
  Mat m(rows, cols);
  for (size_t i = 0; i < digits.size(); ++i) {
    require('0' <= digits[i] && digits[i] <= '9', "malformed matrix payload");
    m.a[i] = digits[i] - '0';
  }
  return m;
}

std::string to_payload(const std::vector<Mat>& ms) {
  std::string s;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) s.push_back(';');
    s += to_payload(ms[i]);
  }
  return s;
}

std::vector<Mat> mats_from_payload(const std::string& s) {
  std::vector<Mat> out;
  if (s.empty()) return out;
  size_t start = 0;
  while (true) {
    size_t sep = s.find(';', start);
    out.push_back(mat_from_payload(
        s.substr(start, sep == std::string::npos ? sep : sep - start)));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  return out;
}

std::string to_string(const Mat& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows; ++i) {
    if (i) s += ", ";
    s += "[";
    for (int j = 0; j < m.cols; ++j) {
      if (j) s += ", ";
      s += std::to_string(m.at(i, j));
    }
    s += "]";
  }
  s += "]";
  return s;
}

}  // namespace twosegal
