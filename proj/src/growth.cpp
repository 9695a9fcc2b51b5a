#include "mpa/growth.hpp"

#include "mpa/errors.hpp"
#include "mpa/params.hpp"

namespace mpa {

namespace {

void check_patch_domain(double x, double K) {
    if (K <= 0.0) throw ValidationError("K > 0");
    if (x < -kDomainTol) throw ValidationError("x >= 0");
}

}

double patch_growth(double x, double r, double K) {
    check_patch_domain(x, K);
    return r * x * (1.0 - x / K);
}

double patch_growth_derivative(double x, double r, double K) {
    check_patch_domain(x, K);
    return r * (1.0 - 2.0 * x / K);
}

double shared_field_growth(double x, double z, double r) {
    if (x < -kDomainTol) throw ValidationError("x >= 0");
    if (x > z + kDomainTol) throw ValidationError("x <= z");
    if (z > 1.0 + kDomainTol) throw ValidationError("z <= 1");
    return r * x * (1.0 - z);
}

double aggregate_growth(double z, double r) {
    if (z < -kDomainTol || z > 1.0 + kDomainTol) throw ValidationError("z in [0,1]");
    return r * z * (1.0 - z);
}

}
