#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "csar/core/error.hpp"

namespace csar {

using cplx = std::complex<double>;

struct Dims {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

inline std::string to_string(Dims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

// Dense row-major complex array. Rows index azimuth, columns index range.
class ComplexImage {
 public:
  ComplexImage() = default;
  ComplexImage(std::size_t rows, std::size_t cols) : dims_{rows, cols}, data_(rows * cols) {}
  explicit ComplexImage(Dims d) : ComplexImage(d.rows, d.cols) {}
  ComplexImage(std::size_t rows, std::size_t cols, std::vector<cplx> data)
      : dims_{rows, cols}, data_(std::move(data)) {
    if (data_.size() != rows * cols) {
      throw DimensionMismatch("image data length " + std::to_string(data_.size()) +
                              " does not match " + to_string(dims_));
    }
  }

  std::size_t rows() const { return dims_.rows; }
  std::size_t cols() const { return dims_.cols; }
  std::size_t size() const { return data_.size(); }
  Dims dims() const { return dims_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dims_.cols + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dims_.cols + c]; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  std::span<cplx> row(std::size_t r) { return {data_.data() + r * dims_.cols, dims_.cols}; }
  std::span<const cplx> row(std::size_t r) const {
    return {data_.data() + r * dims_.cols, dims_.cols};
  }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::vector<cplx>& vector() { return data_; }
  const std::vector<cplx>& vector() const { return data_; }

  ComplexImage& operator+=(const ComplexImage& o) {
    require_same_dims(o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexImage& operator-=(const ComplexImage& o) {
    require_same_dims(o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexImage& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend ComplexImage operator+(ComplexImage a, const ComplexImage& b) { return a += b; }
  friend ComplexImage operator-(ComplexImage a, const ComplexImage& b) { return a -= b; }
  friend ComplexImage operator*(cplx s, ComplexImage a) { return a *= s; }

  void require_same_dims(const ComplexImage& o, const char* what) const {
    if (o.dims_ != dims_) {
      throw DimensionMismatch(std::string(what) + ": " + to_string(dims_) + " vs " +
                              to_string(o.dims_));
    }
  }

 private:
  Dims dims_{};
  std::vector<cplx> data_;
};

inline double norm_sq(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

inline double frobenius_norm(const ComplexImage& img) { return std::sqrt(norm_sq(img.data())); }

// <a, b> = sum conj(a) * b
inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner product length mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline cplx inner(const ComplexImage& a, const ComplexImage& b) {
  a.require_same_dims(b, "inner");
  return inner(a.data(), b.data());
}

inline bool all_finite(std::span<const cplx> v) {
  for (const auto& x : v) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

inline double max_abs(const ComplexImage& img) {
  double m = 0.0;
  for (const auto& v : img.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace csar
