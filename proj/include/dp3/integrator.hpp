#pragma once

// Adaptive integration of the special solution on [tau0, tau_max] together
// with the running integrals I1 = int (2a/t + b/u) and I2 = int f/t, carried
// as extra components of the state:
//
//   y = (u, u', I1, Re I2, Im I2),
//   y' = (u', u'', 2a/tau + b/u, Re f / tau, Im f / tau).
//
// The stepper is the Dormand-Prince 8(5,3) pair (Hairer's DOP853) with its
// seventh-order continuous extension.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "dp3/core.hpp"

namespace dp3 {

inline constexpr std::size_t kStateSize = 5;
using State = std::array<double, kStateSize>;

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double tau0 = 0.1;
  double tau_max = 40.0;
  /// Hard cap; the step is further limited to 0.25 tau^{1/3}.
  double max_step = 1.0;
  double dense_output_stride = 0.05;
  double pole_guard = 1e8;
  std::size_t series_terms = 12;
  std::size_t max_steps = 5'000'000;

  void validate() const;
};

/// Seventh-order interpolant over one accepted step.
struct DenseSegment {
  double tau_start;
  double h;
  std::array<State, 8> rc;

  State value(double tau) const;
  State derivative(double tau) const;
  double tau_end() const noexcept { return tau_start + h; }
};

struct Diagnostics {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  /// Largest relative residual of the dP3 equation on the sample grid,
  /// with u'' taken from the derivative of the interpolated u'.
  double max_residual = 0.0;
};

class Trajectory {
 public:
  Trajectory(Params params, std::vector<DenseSegment> segments,
             std::vector<AugmentedState> samples, Diagnostics diagnostics);

  const Params& params() const noexcept { return params_; }
  const std::vector<AugmentedState>& samples() const noexcept {
    return samples_;
  }
  const std::vector<DenseSegment>& segments() const noexcept {
    return segments_;
  }
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

  double tau_start() const noexcept { return samples_.front().tau(); }
  double tau_end() const noexcept { return samples_.back().tau(); }

  State state_at(double tau) const;
  State derivative_at(double tau) const;

 private:
  const DenseSegment& segment_for(double tau) const;

  Params params_;
  std::vector<DenseSegment> segments_;
  std::vector<AugmentedState> samples_;
  Diagnostics diagnostics_;
};

/// Right side of the augmented system (special mode, epsilon = +1).
State augmented_rhs(const Params& p, double tau, const State& y);

AugmentedState to_augmented(double tau, const State& y);
State to_state(const AugmentedState& s);

/// The series seed used by integrate(): tau is the halved handoff point.
AugmentedState series_seed(const Params& p, const IntegratorConfig& cfg);

/// Integrates from the series seed to cfg.tau_max. Throws PoleEncountered,
/// ZeroCrossing or StepUnderflow.
Trajectory integrate(const Params& p, const IntegratorConfig& cfg);

/// Integrates from an explicit seed; cfg.tau0 is ignored.
Trajectory integrate_from(const Params& p, const AugmentedState& seed,
                          const IntegratorConfig& cfg);

/// Interpolated state; throws OutOfRange outside the integrated interval.
AugmentedState sample_at(const Trajectory& traj, double tau);

}  // namespace dp3
