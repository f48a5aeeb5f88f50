#pragma once

#include <span>

#include "perron/tensor.hpp"

namespace perron {

/// Pivots below this fraction of max|A| are treated as singular.
inline constexpr double kSingularPivotRatio = 1e-14;

/// Solves A y = rhs by LU with partial pivoting. Throws SingularMatrixError.
Vector lu_solve(const Matrix& a, std::span<const double> rhs);

double dot(std::span<const double> u, std::span<const double> v);
double norm2(std::span<const double> v);
Vector normalized(std::span<const double> v);

/// || [A x^{m-1} - lambda x^{[m-1]} ; x'x - 1] ||_2
double residual(const DenseTensor& a, const EigenPair& pair);

}  // namespace perron
