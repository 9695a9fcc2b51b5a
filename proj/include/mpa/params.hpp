#pragma once

#include <optional>
#include <string>

namespace mpa {

// slack allowed on state-domain checks; integration may overshoot by rounding
inline constexpr double kDomainTol = 1e-9;

// market and regulator constants
struct EconParams {
    double p = 0.0;      // price per unit catch
    double q = 0.0;      // catchability
    double c = 0.0;      // cost per unit effort
    double delta = 0.0;  // discount rate
    double e_max = 1.0;  // effort upper bound

    double theta() const;  // p*q/c, needs c > 0
    void validate() const;
};

struct BioParams {
    double r1 = 0.0;          // reserve-patch growth rate
    double r2 = 0.0;          // fished-patch growth rate
    std::optional<double> r;  // aggregate growth rate, only the split model needs it
    double alpha = 0.0;       // reserve share of capacity
    static constexpr double K = 1.0;

    double require_r() const;
    void validate() const;
};

enum class DiffusionMode { Constant, SizeDependent };

struct DiffusionSpec {
    DiffusionMode mode = DiffusionMode::Constant;
    double value = 0.0;  // lambda, or lambda0 for the size-dependent form

    // lambda resolved at a given reserve share: constant -> value,
    // size-dependent -> value * alpha * (1 - alpha)
    double effective(double alpha) const;
    void validate() const;
};

struct State {
    double x1 = 0.0;  // biomass inside the reserve
    double x2 = 0.0;  // biomass in the fished zone
    double z() const { return x1 + x2; }
};

struct RatePair {
    double dx1 = 0.0;
    double dx2 = 0.0;
    double sum() const { return dx1 + dx2; }
};

enum class ModelVariant { PatchesReserve, GlobalReserve, PatchesOpen, GlobalOpen };

bool is_global(ModelVariant v);
bool is_open(ModelVariant v);
std::string variant_name(ModelVariant v);
std::optional<ModelVariant> variant_from_name(const std::string& name);

}
