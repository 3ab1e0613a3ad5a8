#pragma once

#include <optional>
#include <vector>

#include "skewlines/field.hpp"

namespace skewlines::linalg {

using Vec = std::vector<Fel>;
using Mat = std::vector<Vec>;

Mat zeros(const FieldCtxPtr& ctx, size_t rows, size_t cols);
Mat identity(const FieldCtxPtr& ctx, size_t n);

Mat mul(const Mat& a, const Mat& b);
Vec apply(const Mat& a, const Vec& v);
Mat transpose(const Mat& a);

// Gauss-Jordan elimination to reduced row echelon form; returns the rank.
size_t rref_in_place(Mat& m);
size_t rank(Mat m);

// Basis of the right kernel {v : m v = 0}. The matrix may have zero rows,
// hence the explicit column count and ctx.
std::vector<Vec> kernel_basis(const Mat& m, size_t cols, const FieldCtxPtr& ctx);

Fel det(Mat m);

// One solution of a x = b, or nullopt when inconsistent.
std::optional<Vec> solve(Mat a, Vec b);

Mat inverse(const Mat& a);

// Scales a nonzero vector so its first nonzero entry is 1 (projective
// canonical form). Throws on the zero vector.
Vec scale_canonical(Vec v);

bool is_zero(const Vec& v);

}  // namespace skewlines::linalg
