#pragma once

#include <cstddef>
#include <vector>

#include "mpa/params.hpp"
#include "mpa/trajectory.hpp"

namespace mpa {

// lambda_eff * (x2/(1-alpha) - x1/alpha); positive means net flow into the reserve
double diffusion_flux(const State& s, double alpha, const DiffusionSpec& spec);

// reserve variants harvest the fished-zone density q*E*x2/(1-alpha);
// open-access variants harvest both stocks at q*E*xi
RatePair patches_reserve_rhs(const State& s, double E, const DiffusionSpec& spec,
                             const BioParams& bio, const EconParams& econ);
RatePair global_reserve_rhs(const State& s, double E, const DiffusionSpec& spec,
                            const BioParams& bio, const EconParams& econ);
RatePair patches_open_rhs(const State& s, double E, const DiffusionSpec& spec,
                          const BioParams& bio, const EconParams& econ);
RatePair global_open_rhs(const State& s, double E, const DiffusionSpec& spec,
                         const BioParams& bio, const EconParams& econ);
RatePair model_rhs(ModelVariant variant, const State& s, double E, const DiffusionSpec& spec,
                   const BioParams& bio, const EconParams& econ);

struct DensityView {
    double X1 = 0.0;  // x1/alpha
    double X2 = 0.0;  // x2/(1-alpha)
    double Q = 0.0;   // q/(1-alpha)
};
DensityView density_view(const State& s, double alpha, double q);

// (p*q*x2/(1-alpha) - c) * E, the reserve-model rent
double instantaneous_rent(const State& s, double E, double alpha, const EconParams& econ);

// (p*q*(x1+x2) - c) * E, the open-access rent
double open_access_rent(const State& s, double E, const EconParams& econ);

// inverts the harvest term of the given variant; exact inverse of the rhs
double effort_from_rates(const State& s, double xdot_sum, const BioParams& bio,
                         const EconParams& econ, ModelVariant variant);

struct AdmissibilityReport {
    std::vector<bool> ok;         // per sample
    std::size_t violations = 0;   // samples beyond tolerance
    double max_violation = 0.0;   // worst excess beyond tolerance, 0 when admissible
};

// checks G - q*E_max*x2/(1-alpha) <= d(x1+x2)/dt <= G along a trajectory,
// G the variant's unharvested growth; rates estimated by central differences
AdmissibilityReport admissible_curve_check(const Trajectory& traj, const BioParams& bio,
                                           const EconParams& econ, ModelVariant variant);

}
