#include "pgcs/assembly.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <utility>

#include "pgcs/errors.hpp"

namespace pgcs {
namespace {

std::atomic<int> g_cap_override{0};

void ensure_positive(const Vector& w, const char* name) {
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (!(w[k] > 0.0)) {
      throw ValidationError(std::string("tolerance ") + name + "[" +
                            std::to_string(k + 1) + "] must be positive");
    }
  }
}

void ensure_positive_tolerances(const ToleranceSet& tol) {
  ensure_positive(tol.alpha, "alpha");
  ensure_positive(tol.beta, "beta");
  ensure_positive(tol.gamma, "gamma");
  ensure_positive(tol.zeta, "zeta");
  ensure_positive(tol.tau, "tau");
  ensure_positive(tol.delta, "delta");
}

}  // namespace

int dense_cap() {
  const int override_value = g_cap_override.load();
  if (override_value > 0) return override_value;
  if (const char* env = std::getenv("PGCS_DENSE_CAP")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 4000;
}

void set_dense_cap(int cap) { g_cap_override.store(cap > 0 ? cap : 0); }

SystemOperator::SystemOperator(std::vector<Matrix> a, std::vector<Matrix> b,
                               std::vector<Matrix> c, std::vector<Matrix> d,
                               int p, int m, int n)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
      p_(p), m_(m), n_(n) {}

SystemOperator SystemOperator::from_problem(const PgcsProblem& problem) {
  return SystemOperator(problem.A, problem.B, problem.C, problem.D, problem.p,
                        problem.m, problem.n);
}

SystemOperator SystemOperator::from_perturbation(const PerturbationSet& delta) {
  if (delta.dA.empty()) throw DimensionError("empty perturbation set");
  const int p = static_cast<int>(delta.dA.size());
  const int m = static_cast<int>(delta.dA[0].rows());
  const int n = static_cast<int>(delta.dB[0].rows());
  return SystemOperator(delta.dA, delta.dB, delta.dC, delta.dD, p, m, n);
}

Vector SystemOperator::apply(const Vector& z) const {
  if (z.size() != order()) {
    throw DimensionError("SystemOperator::apply: length " +
                         std::to_string(z.size()) + " != " +
                         std::to_string(order()));
  }
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  Vector out(order());
  for (int k = 0; k < p_; ++k) {
    const auto xk = unvectorize(z.segment(2 * k * mn, mn), m_, n_);
    const auto yk = unvectorize(z.segment((2 * k + 1) * mn, mn), m_, n_);
    const auto xnext =
        unvectorize(z.segment(2 * ((k + 1) % p_) * mn, mn), m_, n_);
    out.segment(2 * k * mn, mn) = vectorize(a_[k] * xk - yk * b_[k]);
    out.segment((2 * k + 1) * mn, mn) = vectorize(c_[k] * xnext - yk * d_[k]);
  }
  return out;
}

Vector SystemOperator::apply_transpose(const Vector& w) const {
  if (w.size() != order()) {
    throw DimensionError("SystemOperator::apply_transpose: length " +
                         std::to_string(w.size()) + " != " +
                         std::to_string(order()));
  }
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  Vector out(order());
  for (int k = 0; k < p_; ++k) {
    const auto pk = unvectorize(w.segment(2 * k * mn, mn), m_, n_);
    const auto qk = unvectorize(w.segment((2 * k + 1) * mn, mn), m_, n_);
    const int prev = (k + p_ - 1) % p_;
    const auto qprev = unvectorize(w.segment((2 * prev + 1) * mn, mn), m_, n_);
    out.segment(2 * k * mn, mn) =
        vectorize(a_[k].transpose() * pk + c_[prev].transpose() * qprev);
    out.segment((2 * k + 1) * mn, mn) =
        vectorize(-pk * b_[k].transpose() - qk * d_[k].transpose());
  }
  return out;
}

Matrix SystemOperator::dense() const {
  if (order() > dense_cap()) {
    throw SizeCapError("dense system matrix of order " +
                       std::to_string(order()) + " exceeds cap " +
                       std::to_string(dense_cap()));
  }
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  const Matrix eye_m = Matrix::Identity(m_, m_);
  const Matrix eye_n = Matrix::Identity(n_, n_);
  Matrix w = Matrix::Zero(order(), order());
  for (int k = 0; k < p_; ++k) {
    const Eigen::Index r1 = 2 * k * mn;
    const Eigen::Index r2 = (2 * k + 1) * mn;
    const Eigen::Index cx = 2 * k * mn;
    const Eigen::Index cy = (2 * k + 1) * mn;
    const Eigen::Index cx_next = 2 * ((k + 1) % p_) * mn;
    w.block(r1, cx, mn, mn) = kronecker(eye_n, a_[k]);
    w.block(r1, cy, mn, mn) = -kronecker(b_[k].transpose(), eye_m);
    w.block(r2, cy, mn, mn) = -kronecker(d_[k].transpose(), eye_m);
    w.block(r2, cx_next, mn, mn) += kronecker(eye_n, c_[k]);
  }
  return w;
}

ScaledDataOperator::ScaledDataOperator(const PgcsSolution& solution,
                                       const ToleranceSet& tol, int p, int m,
                                       int n)
    : x_(solution.X), y_(solution.Y), tol_(tol), p_(p), m_(m), n_(n) {
  if (static_cast<int>(x_.size()) != p || static_cast<int>(y_.size()) != p) {
    throw DimensionError("ScaledDataOperator: solution period mismatch");
  }
  for (int k = 0; k < p; ++k) {
    if (x_[k].rows() != m || x_[k].cols() != n || y_[k].rows() != m ||
        y_[k].cols() != n) {
      throw DimensionError("ScaledDataOperator: solution block " +
                           std::to_string(k + 1) + " has wrong shape");
    }
  }
  if (tol_.alpha.size() != p || tol_.beta.size() != p ||
      tol_.gamma.size() != p || tol_.zeta.size() != p ||
      tol_.tau.size() != p || tol_.delta.size() != p) {
    throw DimensionError("ScaledDataOperator: tolerance period mismatch");
  }
  ensure_positive_tolerances(tol_);
}

Vector ScaledDataOperator::apply(const Vector& u) const {
  if (u.size() != cols()) {
    throw DimensionError("ScaledDataOperator::apply: length " +
                         std::to_string(u.size()) + " != " +
                         std::to_string(cols()));
  }
  const Eigen::Index mm = static_cast<Eigen::Index>(m_) * m_;
  const Eigen::Index nn = static_cast<Eigen::Index>(n_) * n_;
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  Vector out(rows());
  Eigen::Index col = 0;
  for (int k = 0; k < p_; ++k) {
    const Matrix da = unvectorize(u.segment(col, mm), m_, m_); col += mm;
    const Matrix db = unvectorize(u.segment(col, nn), n_, n_); col += nn;
    const auto de = u.segment(col, mn); col += mn;
    const Matrix dc = unvectorize(u.segment(col, mm), m_, m_); col += mm;
    const Matrix dd = unvectorize(u.segment(col, nn), n_, n_); col += nn;
    const auto df = u.segment(col, mn); col += mn;
    const Matrix& xk = x_[k];
    const Matrix& xnext = x_[(k + 1) % p_];
    const Matrix& yk = y_[k];
    out.segment(2 * k * mn, mn) =
        vectorize(Matrix(tol_.alpha[k] * (da * xk) - tol_.beta[k] * (yk * db))) -
        tol_.gamma[k] * de;
    out.segment((2 * k + 1) * mn, mn) =
        vectorize(Matrix(tol_.zeta[k] * (dc * xnext) - tol_.tau[k] * (yk * dd))) -
        tol_.delta[k] * df;
  }
  return out;
}

Vector ScaledDataOperator::apply_transpose(const Vector& w) const {
  if (w.size() != rows()) {
    throw DimensionError("ScaledDataOperator::apply_transpose: length " +
                         std::to_string(w.size()) + " != " +
                         std::to_string(rows()));
  }
  const Eigen::Index mm = static_cast<Eigen::Index>(m_) * m_;
  const Eigen::Index nn = static_cast<Eigen::Index>(n_) * n_;
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  Vector out(cols());
  Eigen::Index col = 0;
  for (int k = 0; k < p_; ++k) {
    const Matrix pk = unvectorize(w.segment(2 * k * mn, mn), m_, n_);
    const Matrix qk = unvectorize(w.segment((2 * k + 1) * mn, mn), m_, n_);
    const Matrix& xk = x_[k];
    const Matrix& xnext = x_[(k + 1) % p_];
    const Matrix& yk = y_[k];
    out.segment(col, mm) =
        tol_.alpha[k] * vectorize(Matrix(pk * xk.transpose())); col += mm;
    out.segment(col, nn) =
        -tol_.beta[k] * vectorize(Matrix(yk.transpose() * pk)); col += nn;
    out.segment(col, mn) = -tol_.gamma[k] * vectorize(pk); col += mn;
    out.segment(col, mm) =
        tol_.zeta[k] * vectorize(Matrix(qk * xnext.transpose())); col += mm;
    out.segment(col, nn) =
        -tol_.tau[k] * vectorize(Matrix(yk.transpose() * qk)); col += nn;
    out.segment(col, mn) = -tol_.delta[k] * vectorize(qk); col += mn;
  }
  return out;
}

Matrix ScaledDataOperator::dense() const {
  if (rows() > dense_cap()) {
    throw SizeCapError("dense scaled operator with " + std::to_string(rows()) +
                       " rows exceeds cap " + std::to_string(dense_cap()));
  }
  const Eigen::Index mm = static_cast<Eigen::Index>(m_) * m_;
  const Eigen::Index nn = static_cast<Eigen::Index>(n_) * n_;
  const Eigen::Index mn = static_cast<Eigen::Index>(m_) * n_;
  const Matrix eye_m = Matrix::Identity(m_, m_);
  const Matrix eye_n = Matrix::Identity(n_, n_);
  const Matrix eye_mn = Matrix::Identity(mn, mn);
  Matrix h = Matrix::Zero(rows(), cols());
  Eigen::Index col = 0;
  for (int k = 0; k < p_; ++k) {
    const Eigen::Index r1 = 2 * k * mn;
    const Eigen::Index r2 = (2 * k + 1) * mn;
    h.block(r1, col, mn, mm) =
        tol_.alpha[k] * kronecker(x_[k].transpose(), eye_m); col += mm;
    h.block(r1, col, mn, nn) = -tol_.beta[k] * kronecker(eye_n, y_[k]); col += nn;
    h.block(r1, col, mn, mn) = -tol_.gamma[k] * eye_mn; col += mn;
    h.block(r2, col, mn, mm) =
        tol_.zeta[k] * kronecker(x_[(k + 1) % p_].transpose(), eye_m); col += mm;
    h.block(r2, col, mn, nn) = -tol_.tau[k] * kronecker(eye_n, y_[k]); col += nn;
    h.block(r2, col, mn, mn) = -tol_.delta[k] * eye_mn; col += mn;
  }
  return h;
}

Vector pack_data_vector(const PgcsProblem& problem) {
  Vector t(data_dimension(problem.p, problem.m, problem.n));
  Eigen::Index col = 0;
  for (int k = 0; k < problem.p; ++k) {
    for (const std::vector<Matrix>* family :
         {&problem.A, &problem.B, &problem.E, &problem.C, &problem.D,
          &problem.F}) {
      const Matrix& block = (*family)[static_cast<std::size_t>(k)];
      t.segment(col, block.size()) = vectorize(block);
      col += block.size();
    }
  }
  return t;
}

Vector pack_perturbation_vector(const PerturbationSet& delta,
                                const ToleranceSet& tol) {
  ensure_positive_tolerances(tol);
  const int p = static_cast<int>(delta.dA.size());
  const int m = static_cast<int>(delta.dA[0].rows());
  const int n = static_cast<int>(delta.dB[0].rows());
  Vector u(data_dimension(p, m, n));
  Eigen::Index col = 0;
  for (int k = 0; k < p; ++k) {
    const std::pair<const Matrix*, double> blocks[] = {
        {&delta.dA[k], tol.alpha[k]}, {&delta.dB[k], tol.beta[k]},
        {&delta.dE[k], tol.gamma[k]}, {&delta.dC[k], tol.zeta[k]},
        {&delta.dD[k], tol.tau[k]},   {&delta.dF[k], tol.delta[k]}};
    for (const auto& [block, weight] : blocks) {
      u.segment(col, block->size()) = vectorize(*block) / weight;
      col += block->size();
    }
  }
  return u;
}

PerturbationSet unpack_perturbation_vector(const Vector& u,
                                           const ToleranceSet& tol, int p,
                                           int m, int n) {
  if (u.size() != data_dimension(p, m, n)) {
    throw DimensionError("unpack_perturbation_vector: length " +
                         std::to_string(u.size()) + " != q");
  }
  ensure_positive_tolerances(tol);
  const Eigen::Index mm = static_cast<Eigen::Index>(m) * m;
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  const Eigen::Index mn = static_cast<Eigen::Index>(m) * n;
  PerturbationSet d;
  Eigen::Index col = 0;
  for (int k = 0; k < p; ++k) {
    d.dA.push_back(tol.alpha[k] * unvectorize(u.segment(col, mm), m, m)); col += mm;
    d.dB.push_back(tol.beta[k] * unvectorize(u.segment(col, nn), n, n)); col += nn;
    d.dE.push_back(tol.gamma[k] * unvectorize(u.segment(col, mn), m, n)); col += mn;
    d.dC.push_back(tol.zeta[k] * unvectorize(u.segment(col, mm), m, m)); col += mm;
    d.dD.push_back(tol.tau[k] * unvectorize(u.segment(col, nn), n, n)); col += nn;
    d.dF.push_back(tol.delta[k] * unvectorize(u.segment(col, mn), m, n)); col += mn;
  }
  return d;
}

}  // namespace pgcs
