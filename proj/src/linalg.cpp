#include "skewlines/linalg.hpp"

#include <stdexcept>

namespace skewlines::linalg {

Mat zeros(const FieldCtxPtr& ctx, size_t rows, size_t cols) {
  return Mat(rows, Vec(cols, ctx->zero()));
}

Mat identity(const FieldCtxPtr& ctx, size_t n) {
  Mat m = zeros(ctx, n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = ctx->one();
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty matrix product");
  if (a[0].size() != b.size()) throw std::invalid_argument("matrix shape mismatch");
  const auto& ctx = a[0][0].ctx();
  Mat c = zeros(ctx, a.size(), b[0].size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
    }
  return c;
}

Vec apply(const Mat& a, const Vec& v) {
  if (a.empty() || a[0].size() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  Vec out;
  out.reserve(a.size());
  for (const auto& row : a) {
    Fel acc = row[0].ctx()->zero();
    for (size_t j = 0; j < v.size(); ++j) acc = acc + row[j] * v[j];
    out.push_back(acc);
  }
  return out;
}

Mat transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat t(a[0].size(), Vec(a.size(), a[0][0].ctx()->zero()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

size_t rref_in_place(Mat& m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    Fel inv = m[rank][col].inv();
    for (size_t j = col; j < cols; ++j) m[rank][j] = m[rank][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col].is_zero()) continue;
      Fel factor = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - factor * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

size_t rank(Mat m) { return rref_in_place(m); }

std::vector<Vec> kernel_basis(const Mat& m, size_t cols, const FieldCtxPtr& ctx) {
  Mat r = m;
  rref_in_place(r);
  // Identify pivot columns of the reduced matrix.
  std::vector<long> pivot_of_col(cols, -1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < r.size(); ++col) {
    if (!r[row][col].is_zero()) {
      pivot_of_col[col] = static_cast<long>(row);
      ++row;
    }
  }
  std::vector<Vec> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec v(cols, ctx->zero());
    v[free] = ctx->one();
    for (size_t col = 0; col < cols; ++col) {
      if (pivot_of_col[col] >= 0)
        v[col] = -r[static_cast<size_t>(pivot_of_col[col])][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Fel det(Mat m) {
  if (m.empty() || m.size() != m[0].size()) throw std::invalid_argument("det of non-square matrix");
  const auto& ctx = m[0][0].ctx();
  Fel result = ctx->one();
  size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return ctx->zero();
    if (pivot != col) {
      std::swap(m[col], m[pivot]);
      result = -result;
    }
    result = result * m[col][col];
    Fel inv = m[col][col].inv();
    for (size_t i = col + 1; i < n; ++i) {
      if (m[i][col].is_zero()) continue;
      Fel factor = m[i][col] * inv;
      for (size_t j = col; j < n; ++j) m[i][j] = m[i][j] - factor * m[col][j];
    }
  }
  return result;
}

std::optional<Vec> solve(Mat a, Vec b) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("solve shape mismatch");
  size_t cols = a[0].size();
  for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  rref_in_place(a);
  const auto& ctx = a[0][0].ctx();
  Vec x(cols, ctx->zero());
  for (const auto& row : a) {
    size_t lead = 0;
    while (lead < row.size() && row[lead].is_zero()) ++lead;
    if (lead == row.size()) continue;       // zero row
    if (lead == cols) return std::nullopt;  // 0 = nonzero: inconsistent
    x[lead] = row[cols];
  }
  return x;
}

Mat inverse(const Mat& a) {
  if (a.empty() || a.size() != a[0].size()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = a.size();
  const auto& ctx = a[0][0].ctx();
  Mat aug = a;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? ctx->one() : ctx->zero());
  if (rref_in_place(aug) != n) throw std::domain_error("matrix is singular");
  Mat inv;
  inv.reserve(n);
  for (size_t i = 0; i < n; ++i)
    inv.emplace_back(aug[i].begin() + static_cast<long>(n), aug[i].end());
  return inv;
}

Vec scale_canonical(Vec v) {
  for (const auto& e : v) {
    if (!e.is_zero()) {
      Fel inv = e.inv();
      for (auto& x : v) x = x * inv;
      return v;
    }
  }
  throw std::invalid_argument("cannot canonicalize the zero vector");
}

bool is_zero(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace skewlines::linalg
