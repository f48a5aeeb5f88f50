#include "perron/tensor.hpp"

#include <algorithm>
#include <string>

#include "perron/errors.hpp"

namespace perron {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw DimensionError("matrix data size does not match rows*cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::operator*(std::span<const double> v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * v[j];
    out[i] = s;
  }
  return out;
}

namespace {

std::vector<std::size_t> make_strides(int order, int dim) {
  if (order < 1) throw DimensionError("tensor order must be >= 1");
  if (dim < 1) throw DimensionError("tensor dimension must be >= 1");
  std::vector<std::size_t> s(static_cast<std::size_t>(order) + 1);
  s[0] = 1;
  for (std::size_t k = 1; k < s.size(); ++k) s[k] = s[k - 1] * static_cast<std::size_t>(dim);
  return s;
}

}  // namespace

DenseTensor::DenseTensor(int order, int dim)
    : order_(order), dim_(dim), strides_(make_strides(order, dim)), entries_(strides_.back(), 0.0) {}

DenseTensor::DenseTensor(int order, int dim, std::vector<double> entries)
    : order_(order), dim_(dim), strides_(make_strides(order, dim)), entries_(std::move(entries)) {
  if (entries_.size() != strides_.back()) {
    throw DimensionError("tensor needs " + std::to_string(strides_.back()) + " entries, got " +
                         std::to_string(entries_.size()));
  }
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(order_)) throw DimensionError("index arity != tensor order");
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw DimensionError("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double& DenseTensor::at(std::initializer_list<int> index) {
  return entries_[offset(std::span<const int>(index.begin(), index.size()))];
}

double DenseTensor::at(std::initializer_list<int> index) const {
  return entries_[offset(std::span<const int>(index.begin(), index.size()))];
}

void DenseTensor::unravel(std::size_t off, std::span<int> index) const {
  const auto n = static_cast<std::size_t>(dim_);
  for (int k = order_ - 1; k >= 0; --k) {
    index[static_cast<std::size_t>(k)] = static_cast<int>(off % n);
    off /= n;
  }
}

double DenseTensor::max_entry() const { return *std::max_element(entries_.begin(), entries_.end()); }

bool DenseTensor::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v >= 0.0; });
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  if (other.order_ != order_ || other.dim_ != dim_) throw DimensionError("tensor shapes differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double c) {
  for (double& v : entries_) v *= c;
  return *this;
}

DenseTensor operator+(DenseTensor lhs, const DenseTensor& rhs) { return lhs += rhs; }

DenseTensor operator*(double c, DenseTensor t) { return t *= c; }

}  // namespace perron
