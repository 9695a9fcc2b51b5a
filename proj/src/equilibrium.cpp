#include "mpa/equilibrium.hpp"

#include <cmath>

#include "mpa/errors.hpp"
#include "mpa/growth.hpp"

namespace mpa {

namespace {

// coefficients of the stationary cubic in the stock variable x2:
//   f(x2) = x2*(A*x2^2 - B*x2 - delta) - R
struct Cubic {
    double A, B, delta, R;
    double eval(double x) const { return x * (A * x * x - B * x - delta) - R; }
    double deriv(double x) const { return 3.0 * A * x * x - 2.0 * B * x - delta; }
};

Cubic make_cubic(const BioParams& bio, const EconParams& econ) {
    bio.validate();
    econ.validate();
    if (econ.c <= 0.0) throw ValidationError("c > 0 required for the stationary analysis");
    if (!(bio.r1 > econ.delta)) throw SolverError("no nontrivial equilibrium");
    const double beta = 1.0 - bio.alpha;
    const double pq = econ.p * econ.q;
    Cubic cb;
    cb.A = 2.0 * bio.r2 * pq / (econ.c * beta * beta);
    cb.B = pq * (bio.r2 - econ.delta) / (econ.c * beta) + bio.r2 / beta;
    cb.delta = econ.delta;
    cb.R = bio.alpha * (bio.r1 - econ.delta) * (bio.r1 + econ.delta) / (4.0 * bio.r1);
    return cb;
}

}

const Diagnostic* EquilibriumReport::find(const std::string& key) const {
    for (const auto& d : diagnostics)
        if (d.key == key) return &d;
    return nullptr;
}

double patches_x1_star(const BioParams& bio, const EconParams& econ) {
    bio.validate();
    econ.validate();
    if (!(bio.r1 > econ.delta)) throw SolverError("no nontrivial equilibrium");
    return bio.alpha * (bio.r1 - econ.delta) / (2.0 * bio.r1);
}

double patches_cubic_residual(double x2, const BioParams& bio, const EconParams& econ) {
    return make_cubic(bio, econ).eval(x2);
}

double patches_x2_star(const BioParams& bio, const EconParams& econ) {
    const Cubic cb = make_cubic(bio, econ);

    // certified bracket: f(0) = -R < 0, expand the upper end until positive
    double lo = 0.0;
    double hi = std::max(1.0 - bio.alpha, 1.0);
    if (!(cb.eval(lo) < 0.0)) throw SolverError("cubic bracket failed at 0");
    int doublings = 0;
    while (cb.eval(hi) <= 0.0) {
        hi *= 2.0;
        if (++doublings > 60) throw SolverError("cubic bracket failed to expand");
    }

    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (cb.eval(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 3; ++k) {
        const double d = cb.deriv(x);
        if (d == 0.0) break;
        x -= cb.eval(x) / d;
    }

    if (std::abs(cb.eval(x)) > 1e-10) throw SolverError("cubic residual certificate failed");
    return x;
}

double t_function(double z, const BioParams& bio, const EconParams& econ) {
    const double th = econ.theta();
    return z * (2.0 * bio.r2 * th * z * z - (th * (bio.r2 - econ.delta) + bio.r2) * z -
                econ.delta);
}

double theta0(const BioParams& bio, const EconParams& econ) {
    if (bio.r1 == bio.r2) throw ValidationError("threshold undefined");
    if (!(bio.r1 > econ.delta)) throw SolverError("no nontrivial equilibrium");
    return (2.0 * bio.r1 / (bio.r1 - econ.delta) + bio.r2 / econ.delta) * bio.r1 /
           (bio.r1 - bio.r2);
}

double remark_r2_bound(const BioParams& bio, const EconParams& econ) {
    if (!(bio.r1 > econ.delta)) throw SolverError("no nontrivial equilibrium");
    const double th = econ.theta();
    return bio.r1 * (th - 2.0 * bio.r1 / (bio.r1 - econ.delta)) / (th + bio.r1 / econ.delta);
}

NormalityDiagnosis normality_diagnosis(const BioParams& bio, const EconParams& econ) {
    bio.validate();
    econ.validate();
    if (!(bio.r1 > econ.delta)) throw SolverError("no nontrivial equilibrium");

    NormalityDiagnosis nd;
    nd.theta = econ.theta();
    if (bio.r1 != bio.r2) nd.theta0 = theta0(bio, econ);

    if (bio.r1 <= bio.r2) {
        nd.decision = NormalityDecision::NeverNormal;
        return nd;
    }
    if (!nd.theta0 || nd.theta <= *nd.theta0) {
        nd.decision = NormalityDecision::NotNormal;
        return nd;
    }

    // sufficient condition: alpha*(r1 + delta + t - 2*delta) <= t - 2*delta with
    // t = ((r1-delta)/r1)*(theta*delta*(r1-r2)/r1 - r2)
    const double t = (bio.r1 - econ.delta) / bio.r1 *
                     (nd.theta * econ.delta * (bio.r1 - bio.r2) / bio.r1 - bio.r2);
    nd.alpha_bound = (t - 2.0 * econ.delta) / (bio.r1 - econ.delta + t);
    const bool ok =
        bio.alpha * (bio.r1 + econ.delta + t - 2.0 * econ.delta) <= t - 2.0 * econ.delta;
    nd.decision = ok ? NormalityDecision::Normal : NormalityDecision::NotNormal;
    return nd;
}

EquilibriumReport patches_equilibrium(const BioParams& bio, const EconParams& econ) {
    EquilibriumReport rep;
    rep.x1_star = patches_x1_star(bio, econ);
    rep.x2_star = patches_x2_star(bio, econ);

    const double a = bio.alpha;
    const double beta = 1.0 - a;
    const double f1 = patch_growth(rep.x1_star, bio.r1, a);
    const double f2 = patch_growth(rep.x2_star, bio.r2, beta);
    rep.e_star = beta / (econ.q * rep.x2_star) * (f1 + f2);

    const double d1 = rep.x1_star / a;
    const double d2 = rep.x2_star / beta;
    rep.normal = d2 <= d1;
    rep.profitable = d2 > 1.0 / econ.theta();
    rep.j_star = (econ.p * econ.q * d2 - econ.c) * rep.e_star / econ.delta;

    const double gap = d1 - d2;
    if (gap > 0.0) {
        rep.lambda_star = f1 / gap;
    }
    rep.feasible = rep.normal && rep.lambda_star.has_value() && rep.e_star >= 0.0 &&
                   rep.e_star <= econ.e_max;

    rep.diagnostics.push_back({"theta", econ.theta(), ""});
    if (bio.r1 != bio.r2) {
        const auto nd = normality_diagnosis(bio, econ);
        rep.diagnostics.push_back({"theta0", *nd.theta0, ""});
        if (nd.alpha_bound) rep.diagnostics.push_back({"alpha_bound", *nd.alpha_bound, ""});
        rep.diagnostics.push_back({"r2_bound", remark_r2_bound(bio, econ), ""});
    }
    rep.diagnostics.push_back({"density_reserve", d1, ""});
    rep.diagnostics.push_back({"density_fished", d2, ""});
    rep.diagnostics.push_back(
        {"cubic_residual", patches_cubic_residual(rep.x2_star, bio, econ), ""});
    const RatePair res = el_residual({rep.x1_star, rep.x2_star}, bio, econ, EulerVariant::Patches);
    rep.diagnostics.push_back({"stationary_residual_1", res.dx1, ""});
    rep.diagnostics.push_back({"stationary_residual_2", res.dx2, ""});
    if (!rep.lambda_star)
        rep.diagnostics.push_back(
            {"lambda_unsupported", d1 - d2,
             "equal or inverted densities admit no nonnegative diffusion coefficient"});
    if (rep.e_star > econ.e_max)
        rep.diagnostics.push_back({"effort_exceeds_bound", rep.e_star - econ.e_max, ""});
    return rep;
}

EquilibriumReport global_equilibrium(const BioParams& bio, const EconParams& econ) {
    bio.validate();
    econ.validate();
    if (econ.c <= 0.0) throw ValidationError("c > 0 required for the stationary analysis");
    const double beta = 1.0 - bio.alpha;
    const double pq = econ.p * econ.q;
    if (!(pq > econ.c * beta)) throw SolverError("interior equilibrium nonpositive");

    EquilibriumReport rep;
    rep.x2_star = econ.c * beta / pq;
    rep.x1_star = 1.0 - rep.x2_star;
    rep.e_star = 0.0;
    rep.lambda_star = 0.0;
    rep.j_star = 0.0;

    const double d1 = rep.x1_star / bio.alpha;
    const double d2 = rep.x2_star / beta;
    rep.normal = d2 <= d1;  // equivalent to p*q >= c
    rep.profitable = d2 > 1.0 / econ.theta();  // d2 == 1/theta: break-even, never true
    rep.feasible = true;

    rep.diagnostics.push_back({"theta", econ.theta(), ""});
    rep.diagnostics.push_back({"density_reserve", d1, ""});
    rep.diagnostics.push_back({"density_fished", d2, ""});
    if (bio.r) {  // the point is r-free; the residual certificate is not
        const RatePair res =
            el_residual({rep.x1_star, rep.x2_star}, bio, econ, EulerVariant::Global);
        rep.diagnostics.push_back({"stationary_residual_1", res.dx1, ""});
        rep.diagnostics.push_back({"stationary_residual_2", res.dx2, ""});
    }
    if (econ.theta() == 1.0) {
        rep.diagnostics.push_back(
            {"lambda_indeterminate", 1.0,
             "densities coincide at theta = 1; any diffusion coefficient is consistent"});
    }
    return rep;
}

RatePair el_residual(const State& s, const BioParams& bio, const EconParams& econ,
                     EulerVariant variant) {
    bio.validate();
    econ.validate();
    if (econ.c <= 0.0) throw ValidationError("c > 0 required for the stationary analysis");
    const double beta = 1.0 - bio.alpha;
    const double w = s.x2 * (econ.p * econ.q * s.x2 / (econ.c * beta) - 1.0);
    if (variant == EulerVariant::Patches) {
        const double f1 = patch_growth(s.x1, bio.r1, bio.alpha);
        const double f2 = patch_growth(s.x2, bio.r2, beta);
        const double df2 = patch_growth_derivative(s.x2, bio.r2, beta);
        const double df1 = patch_growth_derivative(s.x1, bio.r1, bio.alpha);
        return {w * (df2 - econ.delta) + f1 + f2, w * (econ.delta - df1)};
    }
    const double r = bio.require_r();
    const double z = s.z();
    const double dphi = r - 2.0 * r * z;
    return {w * (dphi - econ.delta) + aggregate_growth(z, r), w * (econ.delta - dphi)};
}

}
