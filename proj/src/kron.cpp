#include "pgcs/kron.hpp"

#include <string>

#include "pgcs/errors.hpp"

namespace pgcs {

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvectorize: vector length " +
                         std::to_string(v.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector apply_sandwich(const Matrix& a, const Matrix& c, const Vector& x) {
  if (x.size() != a.cols() * c.rows()) {
    throw DimensionError("apply_sandwich: vector length " +
                         std::to_string(x.size()) + " != " +
                         std::to_string(a.cols()) + "x" +
                         std::to_string(c.rows()));
  }
  const Matrix inner = unvectorize(x, a.cols(), c.rows());
  return vectorize(a * inner * c);
}

}  // namespace pgcs
