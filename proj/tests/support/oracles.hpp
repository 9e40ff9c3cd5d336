#pragma once

#include "qlr/lindblad.hpp"
#include "qlr/opcore.hpp"
#include "qlr/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

// Independent brute-force oracles for the test suites. Everything here is
// deliberately naive and separate from the library's computational paths.

namespace qlr::testing {

/// Entrywise triple-loop matrix product.
inline Matrix matmul_bruteforce(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      for (Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

/// Direct operator-arithmetic evaluation of the master equation.
inline Matrix lindblad_rhs_direct(const LindbladGenerator& gen,
                                  const Matrix& rho) {
  Matrix out = -kI * (gen.hamiltonian * rho - rho * gen.hamiltonian);
  for (const auto& l : gen.jumps) {
    const Matrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

/// Spectral formula for the closed-system LDS:
/// chi_AB(t) = 2 theta(t) Im sum_{nm} e^{i t (E_n - E_m)}
///             Tr(rho Pi_n A Pi_m B).
inline double closed_system_chi_spectral(const Matrix& h, const Matrix& rho,
                                         const Matrix& a, const Matrix& b,
                                         double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& e = es.eigenvalues();
  const auto& v = es.eigenvectors();
  Complex acc = 0;
  for (Index n = 0; n < e.size(); ++n) {
    const Matrix pn = v.col(n) * v.col(n).adjoint();
    for (Index m = 0; m < e.size(); ++m) {
      const Matrix pm = v.col(m) * v.col(m).adjoint();
      acc += std::exp(kI * t * (e(n) - e(m))) *
             (rho * pn * a * pm * b).trace();
    }
  }
  return 2.0 * acc.imag();
}

/// Trapezoidal quadrature on a shared grid.
inline double trapz(const RealVector& x, const RealVector& y) {
  double acc = 0;
  for (Index k = 1; k < x.size(); ++k)
    acc += 0.5 * (y(k) + y(k - 1)) * (x(k) - x(k - 1));
  return acc;
}

/// Choi matrix of a superoperator (column-stacking layout); the map is
/// completely positive iff this is positive semi-definite.
inline Matrix choi_matrix(const SuperOperator& m) {
  const Index d = m.dim;
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Matrix eij = Matrix::Zero(d, d);
      eij(i, j) = 1;
      choi += kron(unvec(m.mat * vec(eij)), eij);
    }
  return 0.5 * (choi + choi.adjoint().eval());
}

inline double min_choi_eigenvalue(const SuperOperator& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(choi_matrix(m))
      .eigenvalues()
      .minCoeff();
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qlr::testing
