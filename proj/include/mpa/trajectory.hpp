#pragma once

#include <cstddef>
#include <vector>

#include "mpa/params.hpp"

namespace mpa {

struct ControlSegment {
    double t_start = 0.0;
    double effort = 0.0;
};

// piecewise-constant effort; the diffusion policy is fixed per scenario
struct ControlSchedule {
    std::vector<ControlSegment> segments;

    static ControlSchedule constant(double effort);
    double effort_at(double t) const;
    void validate(double e_max) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> efforts;
    std::vector<double> rents;  // instantaneous rent, the undiscounted integrand of J
    std::vector<bool> clamped;  // sample was pulled back to 0 after an undershoot

    std::size_t size() const { return times.size(); }
};

}
