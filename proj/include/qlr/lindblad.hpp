#pragma once

#include "qlr/opcore.hpp"
#include "qlr/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qlr {

/// A Lindblad generator (H, {L_mu}); jump operators carry their sqrt(rate)
/// weight. The master equation is
///   L(rho) = -i[H, rho] + sum_mu ( L_mu rho L_mu^dag
///                                 - 1/2 {L_mu^dag L_mu, rho} ).
struct LindbladGenerator {
  Matrix hamiltonian;
  std::vector<Matrix> jumps;

  LindbladGenerator(Matrix h, std::vector<Matrix> ls,
                    const Tolerances& tol = kDefaultTol);

  Index dim() const { return hamiltonian.rows(); }
};

/// Dense d^2 x d^2 matrix of a superoperator in the column-stacking
/// convention.
struct SuperOperator {
  Matrix mat;
  Index dim = 0;  // Hilbert-space dimension d

  Vector apply(const Vector& v) const { return mat * v; }
  Matrix apply(const Matrix& x) const { return unvec(mat * vec(x)); }
};

/// Full eigendecomposition of a superoperator, computed once and shared as
/// an immutable value.
struct SpectralData {
  Vector eigenvalues;   // lambda_mu
  Matrix right;         // columns are right eigenvectors
  Matrix right_inv;     // rows give the dual (left) eigenvectors
  double cond;          // condition number of the eigenvector matrix
  bool diagonalizable;  // cond below the defectiveness threshold
};

/// Condition-number threshold above which the spectral representation is
/// treated as invalid (defective generator).
inline constexpr double kDefectiveCond = 1e10;

SpectralData analyze_spectrum(const SuperOperator& l);

SuperOperator build_superoperator(const LindbladGenerator& gen,
                                  const Tolerances& tol = kDefaultTol);

/// -i[H, .] alone.
SuperOperator hamiltonian_superoperator(const Matrix& h,
                                        const Tolerances& tol = kDefaultTol);

/// Dissipator part only: sum_mu (L_mu . L_mu^dag - 1/2 {L_mu^dag L_mu, .}).
SuperOperator dissipator_superoperator(const std::vector<Matrix>& jumps);

/// Hilbert-Schmidt dual L*: <X, L(Y)> = <L*(X), Y>.
SuperOperator adjoint_superoperator(const SuperOperator& l);

/// exp(t M) as a dense matrix (scaling and squaring).
Matrix propagator(const SuperOperator& l, double t);

/// e^{tL}(rho0) for t >= 0.
DensityMatrix propagate(const SuperOperator& l, const DensityMatrix& rho0,
                        double t);

/// Integrates d rho/dt = (L0 + xi(t) L1)(rho) along an increasing grid that
/// starts at 0, with adaptive embedded Runge-Kutta (relative tolerance
/// 1e-10). Trace is checked to 1e-8 at every grid point.
std::vector<DensityMatrix> propagate_time_dependent(
    const SuperOperator& l0, const SuperOperator& l1,
    const std::function<double(double)>& drive, const DensityMatrix& rho0,
    const RealVector& t_grid);

struct SteadyStateResult {
  std::vector<DensityMatrix> states;
  int kernel_dim = 0;
  bool unique = false;
  /// Set when the spectral gap between the kernel and the rest is below
  /// 1e-8 and the kernel separation is numerically ill-conditioned.
  bool gap_warning = false;
};

SteadyStateResult steady_states(const SuperOperator& l,
                                const Tolerances& tol = kDefaultTol);

/// Spectral projector P0 onto Ker L along the complementary invariant
/// subspace. Throws NumericalError for defective generators.
SuperOperator spectral_projector_p0(const SuperOperator& l);
SuperOperator spectral_projector_p0(const SuperOperator& l,
                                    const SpectralData& spec);

/// Reduced resolvent S = lim_{z->0} Q0 (L - z)^{-1} Q0; satisfies
/// S L = L S = Q0 = 1 - P0.
SuperOperator reduced_resolvent(const SuperOperator& l);
SuperOperator reduced_resolvent(const SuperOperator& l,
                                const SpectralData& spec);

/// max_j |lambda_j| of the generator; scale reference for regularization.
double spectral_span(const SpectralData& spec);

}  // namespace qlr
