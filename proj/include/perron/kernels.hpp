#pragma once

// Two implementations of the dense contraction kernels.
//
// serial:: follows the index-sum definitions literally (one loop over every
// index tuple) and is kept as the reference the tests compare against.
// omp:: contracts slice by slice and splits the leading index across OpenMP
// threads. Each output element is produced by one thread in a fixed order, so
// results do not depend on the thread count.

#include <span>

#include "perron/tensor.hpp"

namespace perron::kernels {

namespace serial {
Vector apply_m1(const DenseTensor& a, std::span<const double> x);
Matrix apply_m2(const DenseTensor& a, std::span<const double> x);
double multilinear_form(const DenseTensor& a, std::span<const double> x);
DenseTensor partial_symmetrize(const DenseTensor& a);
}  // namespace serial

namespace omp {
Vector apply_m1(const DenseTensor& a, std::span<const double> x);
Matrix apply_m2(const DenseTensor& a, std::span<const double> x);
double multilinear_form(const DenseTensor& a, std::span<const double> x);
DenseTensor partial_symmetrize(const DenseTensor& a);

/// Tensors smaller than this run on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;

int max_threads();
}  // namespace omp

}  // namespace perron::kernels
