#ifndef PGCS_KRON_HPP
#define PGCS_KRON_HPP

#include <Eigen/Core>

namespace pgcs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Column-stacking vectorization. Storage is column-major, so this is a
// relabeling of the same data.
Vector vectorize(const Matrix& m);

// Inverse of vectorize; throws DimensionError if v.size() != rows * cols.
Matrix unvectorize(const Vector& v, Eigen::Index rows, Eigen::Index cols);

// Dense Kronecker product, block (i,j) = a(i,j) * b. Reserved for small
// instances and test oracles; use apply_sandwich for operator application.
Matrix kronecker(const Matrix& a, const Matrix& b);

// Applies kron(c^T, a) to x without forming it: result = vec(a * X * c)
// where X = unvectorize(x, a.cols(), c.rows()).
Vector apply_sandwich(const Matrix& a, const Matrix& c, const Vector& x);

}  // namespace pgcs

#endif
