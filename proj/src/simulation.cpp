#include "mpa/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "mpa/errors.hpp"

namespace mpa {

ControlSchedule ControlSchedule::constant(double effort) {
    return {{{0.0, effort}}};
}

double ControlSchedule::effort_at(double t) const {
    double e = 0.0;
    for (const auto& seg : segments) {
        if (seg.t_start <= t)
            e = seg.effort;
        else
            break;
    }
    return e;
}

void ControlSchedule::validate(double e_max) const {
    if (segments.empty()) throw ValidationError("schedule needs at least one segment");
    bool first = true;
    double prev = 0.0;
    for (const auto& seg : segments) {
        if (!first && seg.t_start <= prev)
            throw ValidationError("schedule segments must be time-sorted");
        first = false;
        prev = seg.t_start;
        if (!(seg.effort >= 0.0) || seg.effort > e_max)
            throw ValidationError("E in [0, e_max]");
    }
}

namespace {

double variant_rent(ModelVariant variant, const State& s, double E, double alpha,
                    const EconParams& econ) {
    if (is_open(variant)) return open_access_rent(s, E, econ);
    return instantaneous_rent(s, E, alpha, econ);
}

}

Trajectory integrate(ModelVariant variant, const State& initial, const ControlSchedule& schedule,
                     const BioParams& bio, const EconParams& econ, const DiffusionSpec& spec,
                     double horizon, double step) {
    bio.validate();
    econ.validate();
    spec.validate();
    schedule.validate(econ.e_max);
    if (!(step > 0.0)) throw ValidationError("step > 0");
    if (!(horizon >= step)) throw ValidationError("horizon >= step");
    if (initial.x1 < -kDomainTol || initial.x2 < -kDomainTol)
        throw ValidationError("initial state nonnegative");

    const long long n = std::max<long long>(1, std::llround(horizon / step));

    Trajectory traj;
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    traj.efforts.reserve(n + 1);
    traj.rents.reserve(n + 1);
    traj.clamped.reserve(n + 1);

    State s = initial;
    auto push = [&](double t, double E, bool clamped) {
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.efforts.push_back(E);
        traj.rents.push_back(variant_rent(variant, s, E, bio.alpha, econ));
        traj.clamped.push_back(clamped);
    };
    push(0.0, schedule.effort_at(0.0), false);

    for (long long k = 0; k < n; ++k) {
        const double t = k * step;
        const double E = schedule.effort_at(t);  // held over the whole step

        const RatePair k1 = model_rhs(variant, s, E, spec, bio, econ);
        const State s2{s.x1 + 0.5 * step * k1.dx1, s.x2 + 0.5 * step * k1.dx2};
        const RatePair k2 = model_rhs(variant, s2, E, spec, bio, econ);
        const State s3{s.x1 + 0.5 * step * k2.dx1, s.x2 + 0.5 * step * k2.dx2};
        const RatePair k3 = model_rhs(variant, s3, E, spec, bio, econ);
        const State s4{s.x1 + step * k3.dx1, s.x2 + step * k3.dx2};
        const RatePair k4 = model_rhs(variant, s4, E, spec, bio, econ);

        s.x1 += step / 6.0 * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1);
        s.x2 += step / 6.0 * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2);

        bool clamped = false;
        for (double* x : {&s.x1, &s.x2}) {
            if (*x < 0.0) {
                if (*x < -kDomainTol)
                    throw SolverError("negativity clamp exceeded; reduce the step");
                *x = 0.0;
                clamped = true;
            }
        }
        if (std::abs(s.x1) > 10.0 || std::abs(s.x2) > 10.0)
            throw SolverError("trajectory divergence");

        push((k + 1) * step, schedule.effort_at((k + 1) * step), clamped);
    }
    return traj;
}

DiscountedRevenue discounted_revenue(const Trajectory& traj, const EconParams& econ,
                                     double alpha) {
    if (traj.size() == 0) throw ValidationError("trajectory nonempty");

    DiscountedRevenue out;
    double prev = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double rent =
            instantaneous_rent(traj.states[i], traj.efforts[i], alpha, econ);
        const double f = std::exp(-econ.delta * traj.times[i]) * rent;
        if (i > 0) {
            const double h = traj.times[i] - traj.times[i - 1];
            out.value += 0.5 * h * (prev + f);
        }
        prev = f;
        if (i + 1 == traj.size())
            out.tail_bound = std::abs(rent) * std::exp(-econ.delta * traj.times[i]) / econ.delta;
    }
    return out;
}

std::vector<double> cumulative_discounted_rent(const Trajectory& traj, double delta) {
    std::vector<double> acc(traj.size(), 0.0);
    double prev = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double f = std::exp(-delta * traj.times[i]) * traj.rents[i];
        if (i > 0) {
            const double h = traj.times[i] - traj.times[i - 1];
            acc[i] = acc[i - 1] + 0.5 * h * (prev + f);
        }
        prev = f;
    }
    return acc;
}

double stationarity_drift(ModelVariant variant, const State& point, double E,
                          const DiffusionSpec& spec, const BioParams& bio,
                          const EconParams& econ, double horizon, double step) {
    const Trajectory traj =
        integrate(variant, point, ControlSchedule::constant(E), bio, econ, spec, horizon, step);
    double drift = 0.0;
    for (const State& s : traj.states) {
        drift = std::max(drift, std::abs(s.x1 - point.x1));
        drift = std::max(drift, std::abs(s.x2 - point.x2));
    }
    return drift;
}

}
