#include "perron/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "perron/errors.hpp"
#include "perron/tensor_ops.hpp"

namespace perron {

Vector lu_solve(const Matrix& a, std::span<const double> rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("lu_solve needs a square matrix");
  if (rhs.size() != n) throw DimensionError("right-hand side length != matrix size");

  Matrix lu = a;
  Vector y(rhs.begin(), rhs.end());

  double max_abs = 0.0;
  for (double v : lu.data()) max_abs = std::max(max_abs, std::abs(v));
  const double threshold = kSingularPivotRatio * max_abs;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    }
    const double pivot = lu(p, k);
    if (max_abs == 0.0 || !(std::abs(pivot) >= threshold)) throw SingularMatrixError(k, pivot);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(y[k], y[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      y[i] -= f * y[k];
    }
  }

  for (std::size_t k = n; k-- > 0;) {
    double s = y[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * y[j];
    y[k] = s / lu(k, k);
  }
  return y;
}

double dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("dot of unequal lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm2(std::span<const double> v) {
  double scale = 0.0;
  for (double e : v) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double e : v) {
    const double r = e / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

Vector normalized(std::span<const double> v) {
  const double nv = norm2(v);
  if (nv == 0.0) throw DomainError("cannot normalize the zero vector");
  Vector out(v.begin(), v.end());
  for (double& e : out) e /= nv;
  return out;
}

double residual(const DenseTensor& a, const EigenPair& pair) {
  if (pair.x.size() != static_cast<std::size_t>(a.dim())) throw DimensionError("eigenvector length != tensor dimension");
  const Vector ax = apply_m1(a, pair.x);
  const Vector xp = elementwise_power(pair.x, a.order() - 1);
  Vector r(ax.size() + 1);
  for (std::size_t i = 0; i < ax.size(); ++i) r[i] = ax[i] - pair.lambda * xp[i];
  r.back() = dot(pair.x, pair.x) - 1.0;
  return norm2(r);
}

}  // namespace perron
