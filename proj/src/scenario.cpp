#include "mpa/scenario.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mpa/errors.hpp"

namespace mpa {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct RawValue {
    std::string text;
    bool quoted = false;
};

// line-oriented reader for the closed scenario schema; full TOML is much
// bigger than what the schema needs
std::map<std::string, std::map<std::string, RawValue>> read_tables(const std::string& text) {
    std::map<std::string, std::map<std::string, RawValue>> tables;
    std::istringstream in(text);
    std::string line, table;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        if (t.front() == '[') {
            if (t.back() != ']') throw ValidationError("unterminated table header: " + t);
            table = trim(t.substr(1, t.size() - 2));
            if (table.empty()) throw ValidationError("empty table header");
            if (tables.count(table)) throw ValidationError("duplicate table: " + table);
            tables[table];
            continue;
        }

        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("expected key = value on line " + std::to_string(lineno));
        const std::string key = trim(t.substr(0, eq));
        std::string rest = trim(t.substr(eq + 1));
        if (key.empty()) throw ValidationError("empty key on line " + std::to_string(lineno));
        if (table.empty()) throw ValidationError("key outside any table: " + key);

        RawValue rv;
        if (!rest.empty() && rest.front() == '"') {
            const std::size_t close = rest.find('"', 1);
            if (close == std::string::npos)
                throw ValidationError("unterminated string for key " + key);
            rv.text = rest.substr(1, close - 1);
            rv.quoted = true;
            const std::string tail = trim(rest.substr(close + 1));
            if (!tail.empty() && tail[0] != '#')
                throw ValidationError("trailing junk after value for key " + key);
        } else {
            const std::size_t hash = rest.find('#');
            if (hash != std::string::npos) rest = trim(rest.substr(0, hash));
            if (rest.empty()) throw ValidationError("missing value for key " + key);
            rv.text = rest;
        }
        if (!tables[table].emplace(key, rv).second)
            throw ValidationError("duplicate key: " + table + "." + key);
    }
    return tables;
}

double to_number(const std::string& table, const std::string& key, const RawValue& rv) {
    if (rv.quoted) throw ValidationError("number expected: " + table + "." + key);
    const char* begin = rv.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ValidationError("bad number: " + table + "." + key + " = " + rv.text);
    return v;
}

// pulls a key out of the table map, so leftovers can be reported as unknown
class TableReader {
  public:
    TableReader(std::string name, std::map<std::string, RawValue>& kv)
        : name_(std::move(name)), kv_(kv) {}

    std::optional<double> number(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        const double v = to_number(name_, key, it->second);
        kv_.erase(it);
        return v;
    }

    double required_number(const std::string& key) {
        auto v = number(key);
        if (!v) throw ValidationError("missing key: " + name_ + "." + key);
        return *v;
    }

    std::optional<std::string> string(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        if (!it->second.quoted)
            throw ValidationError("string expected: " + name_ + "." + key);
        std::string v = it->second.text;
        kv_.erase(it);
        return v;
    }

    void finish() const {
        if (!kv_.empty())
            throw ValidationError("unknown key: " + name_ + "." + kv_.begin()->first);
    }

  private:
    std::string name_;
    std::map<std::string, RawValue>& kv_;
};

}

Scenario parse_scenario(const std::string& text, const std::string& name_hint) {
    auto tables = read_tables(text);

    for (const auto& [name, _] : tables) {
        if (name != "bio" && name != "econ" && name != "diffusion" && name != "simulation")
            throw ValidationError("unknown table: " + name);
    }
    for (const char* required : {"bio", "econ", "diffusion"}) {
        if (!tables.count(required))
            throw ValidationError(std::string("missing table: ") + required);
    }

    Scenario sc;
    sc.name = name_hint;

    {
        TableReader bio("bio", tables["bio"]);
        sc.bio.r1 = bio.required_number("r1");
        sc.bio.r2 = bio.required_number("r2");
        sc.bio.r = bio.number("r");
        sc.bio.alpha = bio.required_number("alpha");
        bio.finish();
        sc.bio.validate();
    }
    {
        TableReader econ("econ", tables["econ"]);
        sc.econ.p = econ.required_number("p");
        sc.econ.q = econ.required_number("q");
        sc.econ.c = econ.required_number("c");
        sc.econ.delta = econ.required_number("delta");
        sc.econ.e_max = econ.number("e_max").value_or(1.0);
        econ.finish();
        sc.econ.validate();
    }
    {
        TableReader diff("diffusion", tables["diffusion"]);
        const auto mode = diff.string("mode");
        if (!mode) throw ValidationError("missing key: diffusion.mode");
        if (*mode == "constant") {
            sc.diffusion.mode = DiffusionMode::Constant;
            sc.diffusion.value = diff.required_number("lambda");
        } else if (*mode == "size_dependent") {
            sc.diffusion.mode = DiffusionMode::SizeDependent;
            sc.diffusion.value = diff.required_number("lambda0");
        } else {
            throw ValidationError("diffusion.mode must be \"constant\" or \"size_dependent\"");
        }
        diff.finish();
        sc.diffusion.validate();
    }
    if (tables.count("simulation")) {
        TableReader sim("simulation", tables["simulation"]);
        SimulationSetup setup;
        setup.initial.x1 = sim.required_number("x1_0");
        setup.initial.x2 = sim.required_number("x2_0");
        setup.horizon = sim.required_number("horizon");
        setup.step = sim.number("step").value_or(0.01);
        setup.effort = sim.number("effort").value_or(0.0);
        sim.finish();
        if (setup.initial.x1 < 0.0 || setup.initial.x2 < 0.0)
            throw ValidationError("simulation initial state nonnegative");
        if (!(setup.step > 0.0)) throw ValidationError("step > 0");
        if (!(setup.horizon >= setup.step)) throw ValidationError("horizon >= step");
        if (!(setup.effort >= 0.0) || setup.effort > sc.econ.e_max)
            throw ValidationError("E in [0, e_max]");
        sc.simulation = setup;
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), std::filesystem::path(path).stem().string());
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "[bio]\n";
    out << "r1 = " << format_g17(sc.bio.r1) << "\n";
    out << "r2 = " << format_g17(sc.bio.r2) << "\n";
    if (sc.bio.r) out << "r = " << format_g17(*sc.bio.r) << "\n";
    out << "alpha = " << format_g17(sc.bio.alpha) << "\n";
    out << "[econ]\n";
    out << "p = " << format_g17(sc.econ.p) << "\n";
    out << "q = " << format_g17(sc.econ.q) << "\n";
    out << "c = " << format_g17(sc.econ.c) << "\n";
    out << "delta = " << format_g17(sc.econ.delta) << "\n";
    out << "e_max = " << format_g17(sc.econ.e_max) << "\n";
    out << "[diffusion]\n";
    if (sc.diffusion.mode == DiffusionMode::Constant) {
        out << "mode = \"constant\"\n";
        out << "lambda = " << format_g17(sc.diffusion.value) << "\n";
    } else {
        out << "mode = \"size_dependent\"\n";
        out << "lambda0 = " << format_g17(sc.diffusion.value) << "\n";
    }
    if (sc.simulation) {
        out << "[simulation]\n";
        out << "x1_0 = " << format_g17(sc.simulation->initial.x1) << "\n";
        out << "x2_0 = " << format_g17(sc.simulation->initial.x2) << "\n";
        out << "horizon = " << format_g17(sc.simulation->horizon) << "\n";
        out << "step = " << format_g17(sc.simulation->step) << "\n";
        out << "effort = " << format_g17(sc.simulation->effort) << "\n";
    }
    return out.str();
}

std::uint64_t scenario_digest(const Scenario& sc) {
    const std::string text = serialize_scenario(sc);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

Scenario paper_scenario() {
    Scenario sc;
    sc.name = "paper";
    sc.description =
        "baseline comparison scenario; price p = 0.3 reverse-engineered from the "
        "published global-model equilibrium x2 = c*(1-alpha)/(p*q) = 0.125";
    sc.variant = ModelVariant::PatchesReserve;
    sc.bio.r1 = 0.4;
    sc.bio.r2 = 0.05;
    sc.bio.r = 0.28739;
    sc.bio.alpha = 0.5;
    sc.econ.p = 0.3;
    sc.econ.q = 2.0;
    sc.econ.c = 0.15;
    sc.econ.delta = 0.05;
    sc.econ.e_max = 1.0;
    sc.diffusion.mode = DiffusionMode::Constant;
    sc.diffusion.value = 20.0;
    return sc;
}

bool same_content(const Scenario& a, const Scenario& b) {
    if (a.variant != b.variant) return false;
    if (a.bio.r1 != b.bio.r1 || a.bio.r2 != b.bio.r2 || a.bio.alpha != b.bio.alpha)
        return false;
    if (a.bio.r.has_value() != b.bio.r.has_value()) return false;
    if (a.bio.r && *a.bio.r != *b.bio.r) return false;
    if (a.econ.p != b.econ.p || a.econ.q != b.econ.q || a.econ.c != b.econ.c ||
        a.econ.delta != b.econ.delta || a.econ.e_max != b.econ.e_max)
        return false;
    if (a.diffusion.mode != b.diffusion.mode || a.diffusion.value != b.diffusion.value)
        return false;
    if (a.simulation.has_value() != b.simulation.has_value()) return false;
    if (a.simulation) {
        const auto& sa = *a.simulation;
        const auto& sb = *b.simulation;
        if (sa.initial.x1 != sb.initial.x1 || sa.initial.x2 != sb.initial.x2 ||
            sa.horizon != sb.horizon || sa.step != sb.step || sa.effort != sb.effort)
            return false;
    }
    return true;
}

}
