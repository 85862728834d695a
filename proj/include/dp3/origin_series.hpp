#pragma once

// Taylor data of the odd solution at the singular point tau = 0,
//
//   u(tau) = sum_k c_{2k+1} tau^{2k+1},   c_1 = -b/(2a),
//
// and term-by-term evaluation of both integrals on [0, tau0].

#include <vector>

#include "dp3/core.hpp"

namespace dp3 {

struct OriginSeries {
  double a;
  double b;
  /// coeffs[k] = c_{2k+1}.
  std::vector<double> coeffs;
  std::size_t n_terms;
  /// Ratio-test estimate of the convergence radius in tau.
  double radius_estimate;
};

/// Inserting the odd ansatz into tau u u'' - tau (u')^2 + u u' + 8u^3
/// - 2ab u - b^2 tau = 0 gives, at order tau^n (n odd),
///
///   sum_{i+j=n+1} (j-i)^2/2 c_i c_j + 8 sum_{i+j+k=n} c_i c_j c_k
///     - 2ab c_n - b^2 [n=1] = 0,
///
/// which is linear in c_n with coefficient -b ((n-1)^2 + 4a^2) / (2a).
OriginSeries build_series(const Params& p, std::size_t n_terms);

struct SeriesPoint {
  double u;
  double du;
};

SeriesPoint eval_u(const OriginSeries& series, double tau);

struct SeriesIntegrals {
  double i1;
  ComplexValue i2;
};

/// I1(tau0) and I2(tau0). The integrand 2a/tau + b/u is expanded through the
/// reciprocal series of u/tau, where b/c_1 = -2a removes the pole; f/tau uses
/// u+ applied to the same series.
SeriesIntegrals eval_integrals(const OriginSeries& series, double tau0);

/// Residual of the cleared equation for the truncated series.
double series_ode_residual(const OriginSeries& series, double tau);

/// Largest tau <= tau0 (found by halving) at which the last retained term
/// of u contributes less than rel_tol relative to u.
double choose_seed_tau(const OriginSeries& series, double tau0,
                       double rel_tol = 1e-13);

}  // namespace dp3
