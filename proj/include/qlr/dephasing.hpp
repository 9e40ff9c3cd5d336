#pragma once

#include "qlr/lindblad.hpp"
#include "qlr/opcore.hpp"
#include "qlr/response.hpp"
#include "qlr/types.hpp"

#include <vector>

namespace qlr {

/// Generalized dephasing channel determined by a complete family of
/// orthogonal projectors {Pi_n} and the matrix Lambda of complex rates
/// lambda_nm = gamma_nm + i omega_nm governing the dual maps
///   E*(t)(X) = sum_{n,m} Pi_n X Pi_m e^{lambda_nm t}.
/// Lambda is hermitian with vanishing main diagonal and Re lambda_nm <= 0.
class DephasingModel {
 public:
  DephasingModel(std::vector<Matrix> projectors, Matrix lambda);

  const std::vector<Matrix>& projectors() const { return projectors_; }
  const Matrix& lambda() const { return lambda_; }
  Index dim() const { return projectors_.front().rows(); }
  Index blocks() const { return static_cast<Index>(projectors_.size()); }

 private:
  std::vector<Matrix> projectors_;
  Matrix lambda_;
};

/// Constructs the model from commuting Lindblad data: the projectors are the
/// joint eigenspaces of {H} U {L_mu, L_mu^dag} (merged within
/// degeneracy_tol), and lambda_nm is read off by applying the dual generator
/// to Pi_n E Pi_m basis elements. Throws if the family does not commute.
DephasingModel dephasing_from_commuting(const LindbladGenerator& gen,
                                        double degeneracy_tol = 1e-9);

/// E*(t)(X) = sum_{n,m} Pi_n X Pi_m e^{lambda_nm t}, t >= 0.
Matrix dephasing_dual_map(const DephasingModel& model, double t,
                          const Matrix& x);

/// P0(A) = sum_n Pi_n A Pi_n, the projection onto the kernel.
Matrix kernel_projection(const DephasingModel& model, const Matrix& a);

/// Closed-form LDS for the dephasing channel:
///   chi_AB(t) = chibar_AB + 2 sum_{n != m} |<Pi_n A Pi_m, B>_rho|
///               e^{-|gamma_mn| t} sin(omega_mn t + theta_nm),
/// with chibar_AB = -i Tr([rho, P0(A)] B) and
/// theta_nm = arg <Pi_n A Pi_m, B>_rho. Requires [Pi_n, rho] = 0 for all n.
ResponseSeries chi_dephasing(const DephasingModel& model,
                             const DensityMatrix& rho, const Matrix& a,
                             const Matrix& b, const RealVector& t_grid);

}  // namespace qlr
