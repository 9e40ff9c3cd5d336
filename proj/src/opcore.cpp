#include "qlr/opcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qlr {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(who) + ": matrix is not square");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(who) + ": dimension mismatch (" +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
}

}  // namespace

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator");
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  require_square(a, "anticommutator");
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

double trace_norm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues().sum();
}

double operator_norm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size())
    throw DimensionError("unvec: length is not a perfect square");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix left_mult_superop(const Matrix& l) {
  require_square(l, "left_mult_superop");
  return kron(Matrix::Identity(l.rows(), l.rows()), l);
}

Matrix right_mult_superop(const Matrix& r) {
  require_square(r, "right_mult_superop");
  return kron(r.transpose(), Matrix::Identity(r.rows(), r.rows()));
}

Complex trace_against(const Matrix& a, const Vector& vec_y) {
  if (a.size() != vec_y.size())
    throw DimensionError("trace_against: dimension mismatch");
  // Tr(Y A) = <A^dag, Y>_HS = vec(A^dag)^H vec(Y)
  return vec(Matrix(a.adjoint())).dot(vec_y);
}

DensityMatrix::DensityMatrix(Matrix rho, const Tolerances& tol) {
  require_square(rho, "DensityMatrix");
  if (!is_hermitian(rho, tol.herm))
    throw PreconditionError("DensityMatrix: not hermitian within tolerance");
  const double tr_dev = std::abs(rho.trace() - Complex(1.0));
  if (tr_dev > tol.trace)
    throw PreconditionError("DensityMatrix: trace deviates from 1 by " +
                            std::to_string(tr_dev));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  min_eig_ = es.eigenvalues().minCoeff();
  if (min_eig_ < -tol.psd)
    throw PreconditionError("DensityMatrix: negative eigenvalue " +
                            std::to_string(min_eig_));
  full_rank_ = min_eig_ > tol.rank;
  rho_ = std::move(rho);
}

Complex weighted_inner(const DensityMatrix& rho, const Matrix& a,
                       const Matrix& b) {
  require_same_dim(a, b, "weighted_inner");
  if (a.rows() != rho.dim())
    throw DimensionError("weighted_inner: operator/state dimension mismatch");
  return (rho.matrix() * a.adjoint() * b).trace();
}

Matrix sharp_conjugate(const Matrix& superop, const DensityMatrix& rho) {
  if (!rho.full_rank())
    throw PreconditionError(
        "sharp_conjugate: rho is rank deficient, R_rho is not invertible");
  const Index d = rho.dim();
  if (superop.rows() != d * d || superop.cols() != d * d)
    throw DimensionError("sharp_conjugate: superoperator is not d^2 x d^2");
  const Matrix r = right_mult_superop(rho.matrix());
  const Matrix r_inv = right_mult_superop(rho.matrix().inverse());
  return r_inv * superop.adjoint() * r;
}

bool is_detailed_balance(const Matrix& superop, const DensityMatrix& rho,
                         double tol) {
  const Index d = rho.dim();
  if (superop.rows() != d * d || superop.cols() != d * d)
    throw DimensionError("is_detailed_balance: superoperator is not d^2 x d^2");
  const Matrix r = right_mult_superop(rho.matrix());
  const Matrix dev = superop.adjoint() * r - r * superop;
  return dev.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qlr
