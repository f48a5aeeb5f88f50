#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace perron {

using Vector = std::vector<double>;

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Vector operator*(std::span<const double> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Order-m, dimension-n real tensor stored densely in lexicographic order:
/// the linear offset of (i1,...,im) is i1*n^(m-1) + ... + im, indices 0-based.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(int order, int dim);
  DenseTensor(int order, int dim, std::vector<double> entries);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// n^k, the number of entries spanned by the last k indices.
  std::size_t stride(int k) const noexcept { return strides_[static_cast<std::size_t>(k)]; }

  std::span<double> entries() noexcept { return entries_; }
  std::span<const double> entries() const noexcept { return entries_; }

  double& operator[](std::size_t offset) { return entries_[offset]; }
  double operator[](std::size_t offset) const { return entries_[offset]; }

  std::size_t offset(std::span<const int> index) const;
  double& at(std::initializer_list<int> index);
  double at(std::initializer_list<int> index) const;

  /// Inverse of offset(): writes the m indices of `offset` into `index`.
  void unravel(std::size_t offset, std::span<int> index) const;

  double max_entry() const;
  bool is_nonnegative() const;

  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator*=(double c);

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  int order_ = 0;
  int dim_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<double> entries_;
};

DenseTensor operator+(DenseTensor lhs, const DenseTensor& rhs);
DenseTensor operator*(double c, DenseTensor t);

/// (lambda, x) with x of unit Euclidean norm for solver outputs.
struct EigenPair {
  double lambda = 0.0;
  Vector x;
};

}  // namespace perron
