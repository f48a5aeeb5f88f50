#include <algorithm>
#include <numeric>
#include <vector>

#include "perron/errors.hpp"
#include "perron/kernels.hpp"

namespace perron::kernels::serial {

namespace {

void check_dim(const DenseTensor& a, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(a.dim())) throw DimensionError("vector length != tensor dimension");
}

// Steps `index` to the next tuple in lexicographic order.
void advance(std::vector<int>& index, int n) {
  for (auto k = index.size(); k-- > 0;) {
    if (++index[k] < n) return;
    index[k] = 0;
  }
}

}  // namespace

Vector apply_m1(const DenseTensor& a, std::span<const double> x) {
  check_dim(a, x);
  const int m = a.order();
  Vector y(x.size(), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (std::size_t off = 0; off < a.size(); ++off, advance(idx, a.dim())) {
    double term = a[off];
    for (int k = 1; k < m; ++k) term *= x[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    y[static_cast<std::size_t>(idx[0])] += term;
  }
  return y;
}

Matrix apply_m2(const DenseTensor& a, std::span<const double> x) {
  check_dim(a, x);
  if (a.order() < 2) throw DimensionError("apply_m2 needs order >= 2");
  const int m = a.order();
  const auto n = x.size();
  Matrix out(n, n);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (std::size_t off = 0; off < a.size(); ++off, advance(idx, a.dim())) {
    double term = a[off];
    for (int k = 2; k < m; ++k) term *= x[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    out(static_cast<std::size_t>(idx[0]), static_cast<std::size_t>(idx[1])) += term;
  }
  return out;
}

double multilinear_form(const DenseTensor& a, std::span<const double> x) {
  check_dim(a, x);
  const int m = a.order();
  double total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (std::size_t off = 0; off < a.size(); ++off, advance(idx, a.dim())) {
    double term = a[off];
    for (int k = 0; k < m; ++k) term *= x[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    total += term;
  }
  return total;
}

// Scatters every entry to all of its trailing-index permutations.
DenseTensor partial_symmetrize(const DenseTensor& a) {
  const int m = a.order();
  DenseTensor out(m, a.dim());
  if (m <= 2) {
    for (std::size_t off = 0; off < a.size(); ++off) out[off] = a[off];
    return out;
  }
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  std::vector<int> perm(static_cast<std::size_t>(m - 1));
  std::vector<int> target(static_cast<std::size_t>(m));
  double count = 0.0;
  for (std::size_t off = 0; off < a.size(); ++off, advance(idx, a.dim())) {
    std::iota(perm.begin(), perm.end(), 1);
    count = 0.0;
    do {
      target[0] = idx[0];
      for (std::size_t k = 0; k < perm.size(); ++k) target[k + 1] = idx[static_cast<std::size_t>(perm[k])];
      out[out.offset(target)] += a[off];
      count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  out *= 1.0 / count;
  return out;
}

}  // namespace perron::kernels::serial
