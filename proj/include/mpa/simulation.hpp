#pragma once

#include "mpa/dynamics.hpp"
#include "mpa/params.hpp"
#include "mpa/trajectory.hpp"

namespace mpa {

// classical fixed-step 4th order integration; effort is held constant over each
// step, segment switches snap to grid points; small negative undershoots are
// clamped to 0, anything worse is an error
Trajectory integrate(ModelVariant variant, const State& initial, const ControlSchedule& schedule,
                     const BioParams& bio, const EconParams& econ, const DiffusionSpec& spec,
                     double horizon, double step);

struct DiscountedRevenue {
    double value = 0.0;       // trapezoid quadrature of exp(-delta*t)*(p*q*x2/(1-alpha)-c)*E
    double tail_bound = 0.0;  // |rent(T)|*exp(-delta*T)/delta
};

DiscountedRevenue discounted_revenue(const Trajectory& traj, const EconParams& econ, double alpha);

// running quadrature of the stored rents, one partial sum per sample
std::vector<double> cumulative_discounted_rent(const Trajectory& traj, double delta);

// integrates from `point` under constant controls and reports the worst
// per-component deviation from it
double stationarity_drift(ModelVariant variant, const State& point, double E,
                          const DiffusionSpec& spec, const BioParams& bio,
                          const EconParams& econ, double horizon, double step = 0.01);

}
