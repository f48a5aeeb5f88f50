#include "perron/tensor_ops.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "perron/errors.hpp"
#include "perron/kernels.hpp"

namespace perron {

namespace {

void require_nonnegative(const DenseTensor& a) {
  if (!a.is_nonnegative()) throw DomainError("tensor has a negative entry");
}

void require_positive(std::span<const double> v, const char* name) {
  for (double e : v) {
    if (!(e > 0.0)) throw DomainError(std::string(name) + " must be strictly positive");
  }
}

// Nodes reachable from node 0 following `adj` (or its transpose).
std::vector<bool> reachable(const std::vector<std::vector<bool>>& adj, bool transpose) {
  const auto n = adj.size();
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  seen[0] = true;
  q.push(0);
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (std::size_t v = 0; v < n; ++v) {
      const bool edge = transpose ? adj[v][u] : adj[u][v];
      if (edge && !seen[v]) {
        seen[v] = true;
        q.push(v);
      }
    }
  }
  return seen;
}

}  // namespace

Vector apply_m1(const DenseTensor& a, std::span<const double> x) { return kernels::omp::apply_m1(a, x); }

double multilinear_form(const DenseTensor& a, std::span<const double> x) {
  return kernels::omp::multilinear_form(a, x);
}

Matrix apply_m2(const DenseTensor& a, std::span<const double> x) { return kernels::omp::apply_m2(a, x); }

DenseTensor partial_symmetrize(const DenseTensor& a) { return kernels::omp::partial_symmetrize(a); }

Matrix jacobian_map(const DenseTensor& a_bar, std::span<const double> x) {
  Matrix j = apply_m2(a_bar, x);
  const double factor = static_cast<double>(a_bar.order() - 1);
  for (double& v : j.data()) v *= factor;
  return j;
}

DenseTensor rank_one_start_tensor(std::span<const double> a, std::span<const double> b, int order) {
  if (a.size() != b.size()) throw DimensionError("start vectors differ in length");
  if (a.empty()) throw DimensionError("start vectors are empty");
  require_positive(a, "start vector a");
  require_positive(b, "start vector b");
  const int n = static_cast<int>(a.size());
  DenseTensor e(order, n);
  std::vector<int> idx(static_cast<std::size_t>(order));
  for (std::size_t off = 0; off < e.size(); ++off) {
    e.unravel(off, idx);
    double v = std::pow(a[static_cast<std::size_t>(idx[0])], order - 1);
    for (int k = 1; k < order; ++k) v *= b[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    e[off] = v;
  }
  return e;
}

DenseTensor identity_tensor(int order, int dim) {
  if (order < 2) throw DimensionError("identity tensor needs order >= 2");
  DenseTensor t(order, dim);
  std::size_t diag_step = 0;
  for (int k = 0; k < order; ++k) diag_step += t.stride(k);
  for (int i = 0; i < dim; ++i) t[static_cast<std::size_t>(i) * diag_step] = 1.0;
  return t;
}

DenseTensor add_scaled_identity(DenseTensor a, double gamma) {
  std::size_t diag_step = 0;
  for (int k = 0; k < a.order(); ++k) diag_step += a.stride(k);
  for (int i = 0; i < a.dim(); ++i) a[static_cast<std::size_t>(i) * diag_step] += gamma;
  return a;
}

Vector elementwise_power(std::span<const double> x, double alpha) {
  const bool integral = alpha == std::floor(alpha);
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!integral && x[i] < 0.0) throw DomainError("fractional power of a negative entry");
    out[i] = std::pow(x[i], alpha);
  }
  return out;
}

SpectralBounds spectral_bounds(const DenseTensor& a) {
  require_nonnegative(a);
  const auto n = static_cast<std::size_t>(a.dim());
  const std::size_t slice = a.stride(a.order() - 1);
  SpectralBounds b;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t k = 0; k < slice; ++k) r += a[i * slice + k];
    b.total_sum += r;
    if (i == 0 || r < b.row_sum_lo) b.row_sum_lo = r;
    if (i == 0 || r > b.row_sum_hi) b.row_sum_hi = r;
  }
  return b;
}

bool weak_irreducibility_check(const DenseTensor& a) {
  require_nonnegative(a);
  const auto n = static_cast<std::size_t>(a.dim());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  for (std::size_t off = 0; off < a.size(); ++off) {
    if (!(a[off] > 0.0)) continue;
    a.unravel(off, idx);
    for (std::size_t k = 1; k < idx.size(); ++k) {
      adj[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(idx[k])] = true;
    }
  }
  const auto fwd = reachable(adj, false);
  const auto bwd = reachable(adj, true);
  for (std::size_t v = 0; v < n; ++v) {
    if (!fwd[v] || !bwd[v]) return false;
  }
  return true;
}

}  // namespace perron
