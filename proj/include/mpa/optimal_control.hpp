#pragma once

#include "mpa/params.hpp"

namespace mpa {

// stationary first-order conditions of the open-access patches problem:
// state stationarity, costate stationarity delta*p_i = dH/dx_i, and the
// singular condition dH/dE = 0, with
//   H = (p*q*(x1+x2) - c)*E + p1*x1dot + p2*x2dot
struct StationaryFOC {
    double x1 = 0.0;
    double x2 = 0.0;
    double p1 = 0.0;  // costate of x1
    double p2 = 0.0;  // costate of x2
    double effort = 0.0;
    double residual_norm = 0.0;  // max-norm over the five equations
    bool effort_in_bounds = true;
};

StationaryFOC patches_open_stationary(const BioParams& bio, const EconParams& econ,
                                      const DiffusionSpec& spec);

// the five residuals at v = (x1, x2, p1, p2, E); exposed for verification
void open_stationary_residual(const double v[5], const BioParams& bio,
                              const EconParams& econ, double lambda, double out[5]);

double hamiltonian_open(const State& s, double p1, double p2, double E,
                        const BioParams& bio, const EconParams& econ,
                        const DiffusionSpec& spec);

struct GoldenRule {
    double z_star = 0.0;
    double e_star = 0.0;
};

// root of Phi(z) = r*(1-2z) + c*r*(1-z)/(p*q*z-c) - delta on (c/(p*q), 1),
// with the stationary effort E = r*(1-z)/q
GoldenRule clark_golden_rule(double r, const EconParams& econ);

double clark_residual(double z, double r, const EconParams& econ);

struct CalibrationResult {
    double e_bar = 0.0;   // open-access patches stationary effort
    double r = 0.0;       // aggregate rate whose golden-rule effort equals e_bar
    double z_star = 0.0;  // golden-rule stock at that rate
    int iterations = 0;
};

// matches the aggregated model's golden-rule effort to the patches stationary
// effort by a monotone search over r in (delta, 4]
CalibrationResult calibrate_r(const BioParams& bio, const EconParams& econ,
                              const DiffusionSpec& spec);

}
