#include "mpa/params.hpp"

#include "mpa/errors.hpp"

namespace mpa {

double EconParams::theta() const {
    if (c <= 0.0) throw ValidationError("theta undefined: c > 0 required");
    return p * q / c;
}

void EconParams::validate() const {
    if (!(p > 0.0)) throw ValidationError("p > 0");
    if (!(q > 0.0)) throw ValidationError("q > 0");
    if (!(c >= 0.0)) throw ValidationError("c >= 0");
    if (!(delta > 0.0)) throw ValidationError("delta > 0");
    if (!(e_max > 0.0)) throw ValidationError("e_max > 0");
}

double BioParams::require_r() const {
    if (!r) throw ValidationError("bio.r required for the global model");
    return *r;
}

void BioParams::validate() const {
    if (!(r1 > 0.0)) throw ValidationError("r1 > 0");
    if (!(r2 > 0.0)) throw ValidationError("r2 > 0");
    if (r && !(*r > 0.0)) throw ValidationError("r > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha in (0,1)");
}

double DiffusionSpec::effective(double alpha) const {
    if (mode == DiffusionMode::Constant) return value;
    return value * alpha * (1.0 - alpha);
}

void DiffusionSpec::validate() const {
    if (mode == DiffusionMode::Constant) {
        if (!(value >= 0.0)) throw ValidationError("lambda >= 0");
    } else {
        if (!(value >= 0.0)) throw ValidationError("lambda0 >= 0");
    }
}

bool is_global(ModelVariant v) {
    return v == ModelVariant::GlobalReserve || v == ModelVariant::GlobalOpen;
}

bool is_open(ModelVariant v) {
    return v == ModelVariant::PatchesOpen || v == ModelVariant::GlobalOpen;
}

std::string variant_name(ModelVariant v) {
    switch (v) {
        case ModelVariant::PatchesReserve: return "patches";
        case ModelVariant::GlobalReserve: return "global";
        case ModelVariant::PatchesOpen: return "patches-open";
        case ModelVariant::GlobalOpen: return "global-open";
    }
    return "?";
}

std::optional<ModelVariant> variant_from_name(const std::string& name) {
    if (name == "patches") return ModelVariant::PatchesReserve;
    if (name == "global") return ModelVariant::GlobalReserve;
    if (name == "patches-open") return ModelVariant::PatchesOpen;
    if (name == "global-open") return ModelVariant::GlobalOpen;
    return std::nullopt;
}

}
