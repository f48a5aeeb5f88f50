#pragma once

#include <span>

#include "perron/tensor.hpp"

namespace perron {

/// y_i = sum A_{i i2..im} x_{i2}...x_{im}, i.e. A x^{m-1}.
Vector apply_m1(const DenseTensor& a, std::span<const double> x);

/// A x^m.
double multilinear_form(const DenseTensor& a, std::span<const double> x);

/// M_ij = sum A_{i j i3..im} x_{i3}...x_{im}. For m = 2 this is A itself.
Matrix apply_m2(const DenseTensor& a, std::span<const double> x);

/// Averages A over all (m-1)! permutations of its trailing indices.
DenseTensor partial_symmetrize(const DenseTensor& a);

/// D_x(A x^{m-1}) = (m-1) * Abar x^{m-2}; `a_bar` must be partially symmetric.
Matrix jacobian_map(const DenseTensor& a_bar, std::span<const double> x);

/// E_{i1..im} = a_{i1}^{m-1} b_{i2}...b_{im}.
DenseTensor rank_one_start_tensor(std::span<const double> a, std::span<const double> b, int order);

DenseTensor identity_tensor(int order, int dim);

/// Returns A + gamma * I.
DenseTensor add_scaled_identity(DenseTensor a, double gamma);

/// x^{[alpha]}. Non-integer alpha requires x >= 0 entrywise.
Vector elementwise_power(std::span<const double> x, double alpha);

struct SpectralBounds {
  double total_sum = 0.0;  // sum of all entries
  double row_sum_lo = 0.0;  // min_i R_i
  double row_sum_hi = 0.0;  // max_i R_i
};

/// Row sums R_i = sum_{i2..im} A_{i i2..im}; lo <= lambda* <= hi <= total.
SpectralBounds spectral_bounds(const DenseTensor& a);

/// Strong connectivity of the digraph with i -> j whenever some positive
/// A_{i i2..im} has j among its trailing indices. False means reducible;
/// true does not prove irreducibility.
bool weak_irreducibility_check(const DenseTensor& a);

}  // namespace perron
