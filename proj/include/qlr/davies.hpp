#pragma once

#include "qlr/lindblad.hpp"
#include "qlr/response.hpp"
#include "qlr/types.hpp"

#include <Eigen/Dense>

namespace qlr {

/// Single-qubit Davies channel: level splitting Delta, temperature T,
/// population relaxation rate b and coherence decay rate Gamma, subject to
/// Gamma >= b/2 >= 0 (complete positivity). The fixed point is the Gibbs
/// form diag(p, 1-p) with p = e^{Delta/2T} / (2 cosh(Delta/2T)); the basis
/// orders the more-populated level first and coherences rotate as
/// rho_01 -> e^{-i t Delta} rho_01.
struct DaviesQubit {
  double delta;
  double temperature;
  double b;
  double gamma;  // coherence decay rate (Gamma)

  DaviesQubit(double delta_, double temperature_, double b_, double gamma_);

  double p() const;
  double thermal_coherence_factor() const;  // tanh(Delta / 2T)
  DensityMatrix gibbs_state() const;

  /// The generator realizing the map: H = (Delta/2) sigma_z, jumps
  /// sqrt(b p) |0><1|, sqrt(b (1-p)) |1><0| and sqrt((Gamma - b/2)/2) sigma_z.
  LindbladGenerator generator() const;
};

/// The Davies map phi_t = e^{t L} as a 4x4 superoperator in the project's
/// column-stacking layout (rho_00, rho_10, rho_01, rho_11).
SuperOperator davies_map(const DaviesQubit& q, double t);

/// Closed-form LDS for a Hamiltonian perturbation B and observable A:
///   chi_AB(t) = 2 theta(t) e^{-t Gamma} sin(t Delta + phi)
///               tanh(Delta/2T) |A_01 B_10|,  phi = arg(A_01 B_10).
ResponseSeries chi_qubit_time(const DaviesQubit& q, const Matrix& a,
                              const Matrix& b, const RealVector& t_grid);

/// Closed-form Fourier transform:
///   tanh(Delta/2T) |A_01 B_10| [ e^{i phi} / (omega + Delta + i Gamma)
///                              - e^{-i phi} / (omega - Delta + i Gamma) ].
FrequencyResponse chi_qubit_freq(const DaviesQubit& q, const Matrix& a,
                                 const Matrix& b,
                                 const RealVector& omega_grid);

/// Qubit MHR for the thermal generator with rates (gamma_plus, gamma_minus),
/// gamma_plus/gamma_minus = e^{-beta Delta}:
///   M(Omega) = sum_{alpha=+-} |B_01| tanh(beta Delta / 2)
///              / |Omega + alpha Delta + i (gamma_plus+gamma_minus)/2|.
double mhr_qubit(double delta, double beta, double gamma_plus,
                 double gamma_minus, const Matrix& b, double omega);

struct RotationAxisAngle {
  Eigen::Vector3d axis;
  double alpha;

  RotationAxisAngle(Eigen::Vector3d axis_, double alpha_);
};

/// U = e^{i alpha n.sigma / 2}.
Matrix su2_rotation(const RotationAxisAngle& rot);

/// Conjugates a superoperator by the Hilbert-space rotation U, i.e. the map
/// rho -> U^dag L(U rho U^dag) U, assembled as (U^T (x) U^dag) L (U^* (x) U).
SuperOperator rotated_superoperator(const SuperOperator& l, const Matrix& u);

/// The purely dissipative part of q1's generator, rotated by rot; used as
/// the perturbation in chi_rotated_davies and its engine cross-check.
SuperOperator rotated_davies_perturbation(const DaviesQubit& q1,
                                          const RotationAxisAngle& rot);

/// Closed-form response of the Davies qubit q0 to the x-axis-rotated purely
/// dissipative Davies perturbation q1. Only the x axis is implemented; other
/// axes go through the generic engine.
ResponseSeries chi_rotated_davies(const DaviesQubit& q0, const DaviesQubit& q1,
                                  const RotationAxisAngle& rot,
                                  const Matrix& a, const RealVector& t_grid);

}  // namespace qlr
