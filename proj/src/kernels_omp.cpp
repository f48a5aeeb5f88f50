#include <algorithm>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "perron/errors.hpp"
#include "perron/kernels.hpp"

namespace perron::kernels::omp {

namespace {

void check_dim(const DenseTensor& a, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(a.dim())) throw DimensionError("vector length != tensor dimension");
}

// Contracts the last `depth` indices of a contiguous block with x.
double contract(const double* block, int depth, std::span<const double> x, const DenseTensor& a) {
  const auto n = x.size();
  if (depth == 0) return *block;
  if (depth == 1) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += block[j] * x[j];
    return s;
  }
  const std::size_t stride = a.stride(depth - 1);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j] * contract(block + j * stride, depth - 1, x, a);
  return s;
}

bool run_parallel(const DenseTensor& a) { return a.size() >= kParallelThreshold; }

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Vector apply_m1(const DenseTensor& a, std::span<const double> x) {
  check_dim(a, x);
  const int n = a.dim();
  const int depth = a.order() - 1;
  const std::size_t slice = a.stride(depth);
  const double* base = a.entries().data();
  Vector y(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (run_parallel(a))
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = contract(base + static_cast<std::size_t>(i) * slice, depth, x, a);
  }
  return y;
}

Matrix apply_m2(const DenseTensor& a, std::span<const double> x) {
  check_dim(a, x);
  if (a.order() < 2) throw DimensionError("apply_m2 needs order >= 2");
  const auto n = static_cast<std::size_t>(a.dim());
  const int depth = a.order() - 2;
  const std::size_t slice = a.stride(depth);
  const double* base = a.entries().data();
  Matrix out(n, n);
  auto cells = out.data();
  const auto count = static_cast<long long>(n * n);
#pragma omp parallel for schedule(static) if (run_parallel(a))
  for (long long ij = 0; ij < count; ++ij) {
    const auto k = static_cast<std::size_t>(ij);
    cells[k] = contract(base + k * slice, depth, x, a);
  }
  return out;
}

double multilinear_form(const DenseTensor& a, std::span<const double> x) {
  const Vector y = apply_m1(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += x[i] * y[i];
  return s;
}

// Gathers, for each output entry, the (m-1)! source entries it averages.
DenseTensor partial_symmetrize(const DenseTensor& a) {
  const int m = a.order();
  if (m <= 2) return a;

  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<std::size_t>(m - 1));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double count = static_cast<double>(perms.size());

  DenseTensor out(m, a.dim());
  const auto total = static_cast<long long>(a.size());
  const auto n = static_cast<std::size_t>(a.dim());
#pragma omp parallel if (run_parallel(a))
  {
    std::vector<int> idx(static_cast<std::size_t>(m));
#pragma omp for schedule(static)
    for (long long e = 0; e < total; ++e) {
      a.unravel(static_cast<std::size_t>(e), idx);
      const std::size_t head = static_cast<std::size_t>(idx[0]) * a.stride(m - 1);
      double s = 0.0;
      for (const auto& p : perms) {
        std::size_t off = 0;
        for (int pos : p) off = off * n + static_cast<std::size_t>(idx[static_cast<std::size_t>(pos)]);
        s += a[head + off];
      }
      out[static_cast<std::size_t>(e)] = s / count;
    }
  }
  return out;
}

}  // namespace perron::kernels::omp
