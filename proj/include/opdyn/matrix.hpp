#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace opdyn {

// Dense row-major square-or-rectangular matrix. Desk-scale only (n up to a
// few hundred), so no expression templates or blocking.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  DenseMatrix(std::initializer_list<std::initializer_list<T>> init)
      : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      assert(row.size() == cols_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix square(std::size_t n, T fill = T{}) {
    return DenseMatrix(n, n, fill);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const T> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
// uint8_t rather than bool: vector<bool> has no contiguous storage.
using BoolMatrix = DenseMatrix<std::uint8_t>;

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, std::span<const double> x);
// Row vector times matrix: (v·m)_j = Σ_i v_i m_ij.
std::vector<double> left_multiply(std::span<const double> v, const Matrix& m);
BoolMatrix boolean_multiply(const BoolMatrix& a, const BoolMatrix& b);

// Pattern of strictly positive entries.
BoolMatrix support(const Matrix& m);

double max_row_sum_error(const Matrix& m);
bool is_row_stochastic(const Matrix& m, double tol);

}  // namespace opdyn
