#pragma once

#include "qlr/response.hpp"
#include "qlr/types.hpp"

#include <vector>

namespace qlr {

/// A quadratic hermitian Majorana form Gamma(M) = (i/4) m^T M m with M a
/// 2L x 2L real antisymmetric matrix; Majorana operators satisfy
/// {m_i, m_j} = 2 delta_ij and are ordered (m_{1,0}, m_{2,0}, m_{1,1}, ...).
/// sigma^z_j = -i m_{1,j} m_{2,j} throughout.
struct MajoranaQuadratic {
  RealMatrix m;

  explicit MajoranaQuadratic(RealMatrix mat);

  Index modes() const { return m.rows() / 2; }

  /// sigma^z on site j (as a quadratic form: entry -2 at (2j, 2j+1)).
  static MajoranaQuadratic site_z(Index n_modes, Index j);
  /// sum_j sigma^z_j.
  static MajoranaQuadratic total_z(Index n_modes);
};

/// Covariance matrix C_ij = -Im <m_i m_j>, real antisymmetric with the
/// eigenvalues of iC inside [-1, 1].
struct CovarianceMatrix {
  RealMatrix c;

  explicit CovarianceMatrix(RealMatrix mat);

  Index modes() const { return c.rows() / 2; }

  /// Product state of sigma^z eigenstates with <sigma^z_j> = sz(j).
  static CovarianceMatrix product_z(const RealVector& sz);
};

/// Quasi-free Lindblad generator: quadratic Hamiltonian plus jump operators
/// L_mu = sum_i Lvec_i m_i linear in Majoranas. The covariance matrix obeys
/// dC/dt = X C + C X^T - Y with
///   S = sum_mu (|L><L| + |L*><L*|),  Y = 2i sum_mu (|L><L| - |L*><L*|),
///   X = H - S.
struct QuasiFreeGenerator {
  MajoranaQuadratic h;
  std::vector<Vector> lvecs;
  RealMatrix x, y, s;
  Vector x_eigenvalues;  // spectrum of X, computed at construction

  Index modes() const { return h.modes(); }
};

QuasiFreeGenerator build_xys(const MajoranaQuadratic& h,
                             const std::vector<Vector>& lvecs);

/// Propagates dC/dt = X C + C X^T - Y along an increasing grid starting at
/// t = 0 via exact per-step exponentials (Van Loan block integral for the
/// inhomogeneity); never forms the (2L)^2 superoperator.
std::vector<CovarianceMatrix> covariance_flow(const QuasiFreeGenerator& gen,
                                              const CovarianceMatrix& c0,
                                              const RealVector& t_grid);

/// Unique steady covariance from X C + C X^T = Y (Bartels-Stewart Schur
/// solve). Requires every eigenvalue of X to satisfy Re < -1e-12.
CovarianceMatrix ness_covariance(const QuasiFreeGenerator& gen);

/// One-particle LDS: chi(t) = (1/4) Tr[ A^T e^{t X0^} (C1) ] with
/// C1 = X1 C0 + C0 X1^T - Y1; C0 must be the NESS of gen0.
ResponseSeries chi_quasifree_time(const QuasiFreeGenerator& gen0,
                                  const QuasiFreeGenerator& gen1,
                                  const CovarianceMatrix& c0,
                                  const MajoranaQuadratic& a,
                                  const RealVector& t_grid);

enum class QfFreqPath { Auto, Spectral, Solve };

/// chi_hat(omega) = (i/4) Tr[ A^T (omega - i X0^ + i eps)^{-1} (C1) ].
/// The spectral path sums over eigenpair poles (lambda_k + lambda_q); the
/// solve path does one Sylvester solve per frequency. Auto prefers spectral
/// and falls back (with a warning) when X0 is too ill-conditioned.
FrequencyResponse chi_quasifree_freq(const QuasiFreeGenerator& gen0,
                                     const QuasiFreeGenerator& gen1,
                                     const CovarianceMatrix& c0,
                                     const MajoranaQuadratic& a,
                                     const RealVector& omega_grid,
                                     double epsilon,
                                     QfFreqPath path = QfFreqPath::Auto);

/// Single-particle MHR: (1/4) || (omega - i X0^ + i eps)^{-1} (C1) ||_1.
double single_particle_mhr(const QuasiFreeGenerator& gen0,
                           const QuasiFreeGenerator& gen1,
                           const CovarianceMatrix& c0, double omega,
                           double epsilon);

struct XYRates {
  double gamma1_left = 0;
  double gamma2_left = 0;
  double gamma1_right = 0;
  double gamma2_right = 0;
};

/// Boundary-driven dissipative XY chain:
///   H = sum_n [ (1+gamma)/2 sx_n sx_{n+1} + (1-gamma)/2 sy_n sy_{n+1} ]
///       + h sum_n sz_n,
/// jumps sqrt(G1) sigma^- and sqrt(G2) sigma^+ at both ends (Jordan-Wigner
/// image; the boundary string is absorbed into the linear Majorana vectors,
/// certified against the full Liouvillian at small N).
QuasiFreeGenerator build_xy_chain(Index n_sites, double gamma, double h,
                                  const XYRates& rates);

/// Bath temperatures to rates: Gamma2 = Gamma1 e^{-2h/T} on each edge.
XYRates xy_rates_from_temperatures(double h, double gamma1_left, double t_left,
                                   double gamma1_right, double t_right);

/// Liouvillian gap Delta = 2 min_k ( -Re lambda_k ) over the spectrum of X.
double liouvillian_gap(const QuasiFreeGenerator& gen);

/// Critical field h_c = 1 - gamma^2.
double xy_critical_field(double gamma);

/// Correlation length xi = 1 / (4 arccosh(h / h_c)) for h > h_c; infinity
/// at h = h_c. The formula's domain is the gapped side h >= h_c.
double correlation_length(double gamma, double h);

/// Connected correlators <sz_n sz_{n+r}> - <sz_n><sz_{n+r}>, r = 1..r_max,
/// by Wick contraction on the NESS covariance.
std::vector<double> ness_zz_correlations(const QuasiFreeGenerator& gen,
                                         Index n, Index r_max);
std::vector<double> zz_correlations_from_covariance(const CovarianceMatrix& c,
                                                    Index n, Index r_max);

}  // namespace qlr
