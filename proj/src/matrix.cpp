#include "opdyn/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace opdyn {

Matrix multiply(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  assert(a.cols() == x.size());
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> left_multiply(std::span<const double> v, const Matrix& m) {
  assert(m.rows() == v.size());
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * m(i, j);
  }
  return out;
}

BoolMatrix boolean_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  assert(a.cols() == b.rows());
  BoolMatrix out(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a(i, k)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) |= b(k, j);
    }
  }
  return out;
}

BoolMatrix support(const Matrix& m) {
  BoolMatrix out(m.rows(), m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) > 0.0;
  return out;
}

double max_row_sum_error(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (double v : m.row(i)) sum += v;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

bool is_row_stochastic(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (double v : m.data())
    if (!(v >= 0.0)) return false;
  return max_row_sum_error(m) <= tol;
}

}  // namespace opdyn
