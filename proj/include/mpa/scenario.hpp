#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mpa/params.hpp"

namespace mpa {

struct SimulationSetup {
    State initial;
    double horizon = 0.0;
    double step = 0.01;
    double effort = 0.0;
};

struct Scenario {
    std::string name = "scenario";
    std::string description;
    ModelVariant variant = ModelVariant::PatchesReserve;
    BioParams bio;
    EconParams econ;
    DiffusionSpec diffusion;
    std::optional<SimulationSetup> simulation;
};

// strict parser for the scenario schema: tables [bio], [econ], [diffusion] and
// optional [simulation]; keys bio.{r1,r2,r,alpha}, econ.{p,q,c,delta,e_max},
// diffusion.{mode,lambda|lambda0}, simulation.{x1_0,x2_0,horizon,step,effort};
// unknown tables or keys are rejected by name
Scenario parse_scenario(const std::string& text, const std::string& name_hint = "scenario");
Scenario load_scenario_file(const std::string& path);

// canonical rendering: fixed table and key order, 17 significant digits
std::string serialize_scenario(const Scenario& sc);

// FNV-1a over the canonical rendering
std::uint64_t scenario_digest(const Scenario& sc);

// baseline comparison scenario; the price 0.3 is reverse-engineered from the
// published global-model equilibrium x2 = c*(1-alpha)/(p*q) = 0.125
Scenario paper_scenario();

// equality of everything except name/description
bool same_content(const Scenario& a, const Scenario& b);

// %.17g rendering shared by the CSV writers and the canonical serializer
std::string format_g17(double v);

}
