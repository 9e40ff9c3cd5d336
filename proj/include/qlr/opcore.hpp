#pragma once

#include "qlr/types.hpp"

namespace qlr {

// ---------------------------------------------------------------------------
// Elementary operator algebra on dense complex matrices.
// ---------------------------------------------------------------------------

inline Matrix dagger(const Matrix& a) { return a.adjoint(); }

bool is_hermitian(const Matrix& a, double tol = kDefaultTol.herm);

/// [A, B] = AB - BA. Throws DimensionError on shape mismatch.
Matrix commutator(const Matrix& a, const Matrix& b);

/// {A, B} = AB + BA.
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Trace norm ||A||_1 = sum of singular values.
double trace_norm(const Matrix& a);

/// Operator norm ||A|| = largest singular value.
double operator_norm(const Matrix& a);

// ---------------------------------------------------------------------------
// Vectorization. Column-stacking throughout the project:
//   vec(L X R) = (R^T (x) L) vec(X).
// Left multiplication X -> LX maps to (1 (x) L), right multiplication
// X -> XR maps to (R^T (x) 1).
// ---------------------------------------------------------------------------

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v);

Matrix kron(const Matrix& a, const Matrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Superoperator matrix of X -> LX.
Matrix left_mult_superop(const Matrix& l);
/// Superoperator matrix of X -> XR.
Matrix right_mult_superop(const Matrix& r);

/// Tr(Y A) with Y given in vectorized form.
Complex trace_against(const Matrix& a, const Vector& vec_y);

// ---------------------------------------------------------------------------
// States and the state-weighted scalar product <A,B>_rho = Tr(rho A^dag B).
// ---------------------------------------------------------------------------

/// A validated density matrix: hermitian, unit trace, positive semi-definite
/// within tolerance. full_rank() reports min eigenvalue > tol.rank, which
/// gates the operations needing rho^{-1}.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho, const Tolerances& tol = kDefaultTol);

  const Matrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }
  bool full_rank() const { return full_rank_; }
  double min_eigenvalue() const { return min_eig_; }

 private:
  Matrix rho_;
  bool full_rank_;
  double min_eig_;
};

/// Tr(rho A^dag B).
Complex weighted_inner(const DensityMatrix& rho, const Matrix& a,
                       const Matrix& b);

/// The scalar product <.,.>_rho as a reusable callable.
class WeightedProduct {
 public:
  explicit WeightedProduct(DensityMatrix rho) : rho_(std::move(rho)) {}
  Complex operator()(const Matrix& a, const Matrix& b) const {
    return weighted_inner(rho_, a, b);
  }
  const DensityMatrix& state() const { return rho_; }

 private:
  DensityMatrix rho_;
};

/// Hermitian conjugate of the superoperator M with respect to <.,.>_rho:
/// M#(X) = M*(X rho) rho^{-1}, i.e. M# = R_rho^{-1} M* R_rho with R_rho
/// right multiplication by rho and M* the Hilbert-Schmidt dual (matrix
/// adjoint in the vectorized representation). Requires full-rank rho.
Matrix sharp_conjugate(const Matrix& superop, const DensityMatrix& rho);

/// Detailed balance (#-hermiticity M# = M) recast without rho^{-1}:
/// true iff || M* R_rho - R_rho M ||_max <= tol.
bool is_detailed_balance(const Matrix& superop, const DensityMatrix& rho,
                         double tol);

}  // namespace qlr
