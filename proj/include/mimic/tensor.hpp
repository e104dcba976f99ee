#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mimic/errors.hpp"

namespace mimic {

// Dense row-major n-dimensional array of doubles. Value-semantic; the
// universal currency for images, activations, parameters and gradients.
class Tensor {
 public:
  using Shape = std::vector<std::int64_t>;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(checked_numel(shape_), 0.0) {}
  Tensor(Shape shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (static_cast<std::int64_t>(data_.size()) != checked_numel(shape_)) {
      throw DimensionError("tensor data length " + std::to_string(data_.size()) +
                           " does not match shape product " + std::to_string(checked_numel(shape_)));
    }
  }
  Tensor(Shape shape, double fill) : shape_(std::move(shape)), data_(checked_numel(shape_), fill) {}

  static Tensor scalar(double v) { return Tensor({1}, std::vector<double>{v}); }
  static Tensor zeros_like(const Tensor& t) { return Tensor(t.shape_); }

  const Shape& shape() const { return shape_; }
  std::int64_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t ndim() const { return shape_.size(); }
  std::int64_t numel() const { return static_cast<std::int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& vec() { return data_; }
  const std::vector<double>& vec() const { return data_; }

  double& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }
  double operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }

  // Multi-index access for tests and non-hot paths.
  double& at(std::initializer_list<std::int64_t> idx) { return data_[flat_index(idx)]; }
  double at(std::initializer_list<std::int64_t> idx) const { return data_[flat_index(idx)]; }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  void fill(double v) { data_.assign(data_.size(), v); }

  std::string shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(shape_[i]);
    }
    return s + "]";
  }

 private:
  static std::int64_t checked_numel(const Shape& shape) {
    std::int64_t n = 1;
    for (std::int64_t d : shape) {
      if (d <= 0) throw DimensionError("tensor axes must be positive, got " + std::to_string(d));
      n *= d;
    }
    return n;
  }

  std::size_t flat_index(std::initializer_list<std::int64_t> idx) const {
    if (idx.size() != shape_.size()) {
      throw DimensionError("index rank " + std::to_string(idx.size()) + " vs tensor rank " +
                           std::to_string(shape_.size()));
    }
    std::size_t flat = 0;
    std::size_t axis = 0;
    for (std::int64_t i : idx) {
      if (i < 0 || i >= shape_[axis]) {
        throw DimensionError("index " + std::to_string(i) + " out of range on axis " +
                             std::to_string(axis));
      }
      flat = flat * static_cast<std::size_t>(shape_[axis]) + static_cast<std::size_t>(i);
      ++axis;
    }
    return flat;
  }

  Shape shape_;
  std::vector<double> data_;
};

// Pairwise (cascade) summation. Reduction order is fixed regardless of the
// caller's threading, so reported numbers never depend on scheduling.
double pairwise_sum(std::span<const double> v);

inline double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return pairwise_sum(v) / static_cast<double>(v.size());
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* what);

}  // namespace mimic
