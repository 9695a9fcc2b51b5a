#include "mpa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mpa/errors.hpp"
#include "mpa/growth.hpp"

namespace mpa {

namespace {

void check_effort(double E, const EconParams& econ) {
    if (!(E >= 0.0) || E > econ.e_max) throw ValidationError("E in [0, e_max]");
}

double lambda_at(const DiffusionSpec& spec, double alpha) {
    if (spec.mode == DiffusionMode::Constant && (alpha <= 0.0 || alpha >= 1.0))
        throw ValidationError("alpha in (0,1)");
    return spec.effective(alpha);
}

}

double diffusion_flux(const State& s, double alpha, const DiffusionSpec& spec) {
    const double lam = lambda_at(spec, alpha);
    if (lam == 0.0) return 0.0;  // size-dependent mode vanishes at the boundary
    return lam * (s.x2 / (1.0 - alpha) - s.x1 / alpha);
}

RatePair patches_reserve_rhs(const State& s, double E, const DiffusionSpec& spec,
                             const BioParams& bio, const EconParams& econ) {
    check_effort(E, econ);
    const double a = bio.alpha;
    const double flux = diffusion_flux(s, a, spec);
    const double f1 = patch_growth(s.x1, bio.r1, a);
    const double f2 = patch_growth(s.x2, bio.r2, 1.0 - a);
    return {f1 + flux, f2 - flux - econ.q * E * s.x2 / (1.0 - a)};
}

RatePair global_reserve_rhs(const State& s, double E, const DiffusionSpec& spec,
                            const BioParams& bio, const EconParams& econ) {
    check_effort(E, econ);
    const double a = bio.alpha;
    const double r = bio.require_r();
    const double z = s.z();
    const double flux = diffusion_flux(s, a, spec);
    const double f1 = shared_field_growth(s.x1, z, r);
    const double f2 = shared_field_growth(s.x2, z, r);
    return {f1 + flux, f2 - flux - econ.q * E * s.x2 / (1.0 - a)};
}

RatePair patches_open_rhs(const State& s, double E, const DiffusionSpec& spec,
                          const BioParams& bio, const EconParams& econ) {
    check_effort(E, econ);
    const double a = bio.alpha;
    const double flux = diffusion_flux(s, a, spec);
    const double f1 = patch_growth(s.x1, bio.r1, a);
    const double f2 = patch_growth(s.x2, bio.r2, 1.0 - a);
    return {f1 + flux - econ.q * E * s.x1, f2 - flux - econ.q * E * s.x2};
}

RatePair global_open_rhs(const State& s, double E, const DiffusionSpec& spec,
                         const BioParams& bio, const EconParams& econ) {
    check_effort(E, econ);
    const double a = bio.alpha;
    const double r = bio.require_r();
    const double z = s.z();
    const double flux = diffusion_flux(s, a, spec);
    const double f1 = shared_field_growth(s.x1, z, r);
    const double f2 = shared_field_growth(s.x2, z, r);
    return {f1 + flux - econ.q * E * s.x1, f2 - flux - econ.q * E * s.x2};
}

RatePair model_rhs(ModelVariant variant, const State& s, double E, const DiffusionSpec& spec,
                   const BioParams& bio, const EconParams& econ) {
    switch (variant) {
        case ModelVariant::PatchesReserve: return patches_reserve_rhs(s, E, spec, bio, econ);
        case ModelVariant::GlobalReserve: return global_reserve_rhs(s, E, spec, bio, econ);
        case ModelVariant::PatchesOpen: return patches_open_rhs(s, E, spec, bio, econ);
        case ModelVariant::GlobalOpen: return global_open_rhs(s, E, spec, bio, econ);
    }
    throw ValidationError("unknown model variant");
}

DensityView density_view(const State& s, double alpha, double q) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha in (0,1)");
    return {s.x1 / alpha, s.x2 / (1.0 - alpha), q / (1.0 - alpha)};
}

double instantaneous_rent(const State& s, double E, double alpha, const EconParams& econ) {
    if (!(E >= 0.0)) throw ValidationError("E >= 0");
    return (econ.p * econ.q * s.x2 / (1.0 - alpha) - econ.c) * E;
}

double open_access_rent(const State& s, double E, const EconParams& econ) {
    if (!(E >= 0.0)) throw ValidationError("E >= 0");
    return (econ.p * econ.q * s.z() - econ.c) * E;
}

double effort_from_rates(const State& s, double xdot_sum, const BioParams& bio,
                         const EconParams& econ, ModelVariant variant) {
    const double a = bio.alpha;
    double growth, divisor;
    if (is_global(variant)) {
        growth = aggregate_growth(s.z(), bio.require_r());
    } else {
        growth = patch_growth(s.x1, bio.r1, a) + patch_growth(s.x2, bio.r2, 1.0 - a);
    }
    if (is_open(variant)) {
        divisor = econ.q * s.z();
    } else {
        divisor = econ.q * s.x2 / (1.0 - a);
    }
    if (divisor <= 0.0) throw ValidationError("effort undefined at zero stock");
    return (growth - xdot_sum) / divisor;
}

AdmissibilityReport admissible_curve_check(const Trajectory& traj, const BioParams& bio,
                                           const EconParams& econ, ModelVariant variant) {
    const std::size_t n = traj.size();
    if (n < 2) throw ValidationError("trajectory needs at least 2 samples");

    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = traj.states[i].z();
    const double h = traj.times[1] - traj.times[0];

    AdmissibilityReport rep;
    rep.ok.assign(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        double sdot;
        if (n == 2) {
            sdot = (z[1] - z[0]) / h;
        } else if (i == 0) {
            sdot = (-3.0 * z[0] + 4.0 * z[1] - z[2]) / (2.0 * h);
        } else if (i + 1 == n) {
            sdot = (3.0 * z[i] - 4.0 * z[i - 1] + z[i - 2]) / (2.0 * h);
        } else {
            sdot = (z[i + 1] - z[i - 1]) / (2.0 * h);
        }

        const State& s = traj.states[i];
        double growth;
        if (is_global(variant)) {
            growth = aggregate_growth(s.z(), bio.require_r());
        } else {
            growth = patch_growth(s.x1, bio.r1, bio.alpha) +
                     patch_growth(s.x2, bio.r2, 1.0 - bio.alpha);
        }
        const double lower = growth - econ.q * econ.e_max * s.x2 / (1.0 - bio.alpha);

        // discretization tolerance from the local third difference of z
        double d3 = 0.0;
        if (i >= 2 && i + 2 < n) {
            d3 = (z[i + 2] - 2.0 * z[i + 1] + 2.0 * z[i - 1] - z[i - 2]) / (2.0 * h * h * h);
        } else if (n >= 3) {
            // near the ends fall back to a crude curvature scale
            const std::size_t j = std::min(std::max<std::size_t>(i, 1), n - 2);
            d3 = 2.0 * std::abs(z[j + 1] - 2.0 * z[j] + z[j - 1]) / (h * h * h);
        }
        const double tol = (n >= 3 ? 1e-9 : 1e-9 + h) + h * h * std::abs(d3);

        const double excess = std::max(sdot - growth, lower - sdot);
        if (excess > tol) {
            rep.ok[i] = false;
            ++rep.violations;
            rep.max_violation = std::max(rep.max_violation, excess - tol);
        }
    }
    return rep;
}

}
