#pragma once

#include "qlr/opcore.hpp"
#include "qlr/pauli.hpp"
#include "qlr/quasifree.hpp"
#include "qlr/types.hpp"

#include <vector>

// Full-Hilbert-space (2^N dimensional) construction of the dissipative XY
// chain, used as the exact oracle for the quasi-free covariance engine at
// small N. Jordan-Wigner convention: m_{1,j} = sx_j prod_{k<j} sz_k,
// m_{2,j} = sy_j prod_{k<j} sz_k, so sz_j = -i m_{1,j} m_{2,j}.

namespace qlr::testing {

inline Matrix op_at(const Matrix& local, Index site, Index n_sites) {
  Matrix out = Matrix::Identity(1, 1);
  for (Index k = 0; k < n_sites; ++k)
    out = kron(out, k == site ? local : pauli::id2());
  return out;
}

inline Matrix jw_majorana(Index mu, Index site, Index n_sites) {
  Matrix out = op_at(mu == 0 ? pauli::x() : pauli::y(), site, n_sites);
  for (Index k = 0; k < site; ++k) out = op_at(pauli::z(), k, n_sites) * out;
  return out;
}

inline Matrix xy_hamiltonian_full(Index n_sites, double gamma, double h) {
  const Index d = Index(1) << n_sites;
  Matrix out = Matrix::Zero(d, d);
  for (Index j = 0; j + 1 < n_sites; ++j) {
    out += 0.5 * (1 + gamma) * op_at(pauli::x(), j, n_sites) *
           op_at(pauli::x(), j + 1, n_sites);
    out += 0.5 * (1 - gamma) * op_at(pauli::y(), j, n_sites) *
           op_at(pauli::y(), j + 1, n_sites);
  }
  for (Index j = 0; j < n_sites; ++j)
    out += h * op_at(pauli::z(), j, n_sites);
  return out;
}

inline std::vector<Matrix> xy_jumps_full(Index n_sites, const XYRates& r) {
  const Matrix sm = 0.5 * (pauli::x() - kI * pauli::y());  // sigma^-
  const Matrix sp = 0.5 * (pauli::x() + kI * pauli::y());  // sigma^+
  std::vector<Matrix> jumps;
  if (r.gamma1_left > 0)
    jumps.push_back(std::sqrt(r.gamma1_left) * op_at(sm, 0, n_sites));
  if (r.gamma2_left > 0)
    jumps.push_back(std::sqrt(r.gamma2_left) * op_at(sp, 0, n_sites));
  if (r.gamma1_right > 0)
    jumps.push_back(std::sqrt(r.gamma1_right) *
                    op_at(sm, n_sites - 1, n_sites));
  if (r.gamma2_right > 0)
    jumps.push_back(std::sqrt(r.gamma2_right) *
                    op_at(sp, n_sites - 1, n_sites));
  return jumps;
}

/// C_ij = -Im Tr(rho m_i m_j) from a full-space state.
inline RealMatrix covariance_from_density(const Matrix& rho, Index n_sites) {
  std::vector<Matrix> majoranas;
  for (Index j = 0; j < n_sites; ++j) {
    majoranas.push_back(jw_majorana(0, j, n_sites));
    majoranas.push_back(jw_majorana(1, j, n_sites));
  }
  const Index n = 2 * n_sites;
  RealMatrix c = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      c(i, j) = -(rho * majoranas[i] * majoranas[j]).trace().imag();
  return 0.5 * (c - c.transpose()).eval();
}

/// Full-space operator of a quadratic form: Gamma(A) = (i/4) sum A_ij m_i m_j.
inline Matrix quadratic_full(const MajoranaQuadratic& a, Index n_sites) {
  std::vector<Matrix> majoranas;
  for (Index j = 0; j < n_sites; ++j) {
    majoranas.push_back(jw_majorana(0, j, n_sites));
    majoranas.push_back(jw_majorana(1, j, n_sites));
  }
  const Index d = Index(1) << n_sites;
  Matrix out = Matrix::Zero(d, d);
  for (Index i = 0; i < 2 * n_sites; ++i)
    for (Index j = 0; j < 2 * n_sites; ++j)
      if (a.m(i, j) != 0.0)
        out += 0.25 * kI * a.m(i, j) * majoranas[i] * majoranas[j];
  return out;
}

}  // namespace qlr::testing
