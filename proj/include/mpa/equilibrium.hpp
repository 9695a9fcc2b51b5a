#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpa/params.hpp"

namespace mpa {

struct Diagnostic {
    std::string key;
    double value = 0.0;
    std::string note;
};

enum class NormalityDecision { Normal, NotNormal, NeverNormal };

struct NormalityDiagnosis {
    double theta = 0.0;
    std::optional<double> theta0;       // absent when r1 == r2
    std::optional<double> alpha_bound;  // absent unless r1 > r2 and theta > theta0
    NormalityDecision decision = NormalityDecision::NotNormal;

    bool normal() const { return decision == NormalityDecision::Normal; }
};

struct EquilibriumReport {
    double x1_star = 0.0;
    double x2_star = 0.0;
    double e_star = 0.0;
    std::optional<double> lambda_star;  // absent when the point is not supportable
    double j_star = 0.0;
    bool normal = false;
    bool profitable = false;
    bool feasible = false;
    std::vector<Diagnostic> diagnostics;

    const Diagnostic* find(const std::string& key) const;
};

// alpha*(r1-delta)/(2*r1); requires r1 > delta
double patches_x1_star(const BioParams& bio, const EconParams& econ);

// unique positive root of the stationary cubic
//   x2*(2*r2*p*q/(c*(1-a)^2)*x2^2 - (p*q*(r2-delta)/(c*(1-a)) + r2/(1-a))*x2 - delta)
//     = alpha*(r1-delta)*(r1+delta)/(4*r1)
double patches_x2_star(const BioParams& bio, const EconParams& econ);

// residual of that cubic at a candidate x2 (left side minus right side)
double patches_cubic_residual(double x2, const BioParams& bio, const EconParams& econ);

// T(z) = z*(2*r2*theta*z^2 - (theta*(r2-delta)+r2)*z - delta), density form of the cubic
double t_function(double z, const BioParams& bio, const EconParams& econ);

// theta0 = (2*r1/(r1-delta) + r2/delta)*r1/(r1-r2); requires r1 != r2
double theta0(const BioParams& bio, const EconParams& econ);

// r2 <= r1*(theta - 2*r1/(r1-delta))/(theta + r1/delta), diagnostic bound on r2
double remark_r2_bound(const BioParams& bio, const EconParams& econ);

NormalityDiagnosis normality_diagnosis(const BioParams& bio, const EconParams& econ);

EquilibriumReport patches_equilibrium(const BioParams& bio, const EconParams& econ);
EquilibriumReport global_equilibrium(const BioParams& bio, const EconParams& econ);

enum class EulerVariant { Patches, Global };

// right-hand sides of the stationary first-order systems; both vanish at the
// corresponding equilibrium
RatePair el_residual(const State& s, const BioParams& bio, const EconParams& econ,
                     EulerVariant variant);

}
