// Acceptance gate: every shipped claim checked at its pinned tolerance, one
// PASS/FAIL line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mpa/cli.hpp"
#include "mpa/dynamics.hpp"
#include "mpa/equilibrium.hpp"
#include "mpa/growth.hpp"
#include "mpa/optimal_control.hpp"
#include "mpa/scenario.hpp"
#include "mpa/simulation.hpp"
#include "oracles.hpp"

using namespace mpa;
namespace fs = std::filesystem;

namespace {

constexpr double kEps = 2.220446049250313e-16;

BioParams bio_of(double r1, double r2, double alpha) {
    BioParams bio;
    bio.r1 = r1;
    bio.r2 = r2;
    bio.alpha = alpha;
    return bio;
}

EconParams econ_of(double p, double q, double c, double delta) {
    EconParams econ;
    econ.p = p;
    econ.q = q;
    econ.c = c;
    econ.delta = delta;
    return econ;
}

DiffusionSpec lam_const(double v) {
    DiffusionSpec spec;
    spec.mode = DiffusionMode::Constant;
    spec.value = v;
    return spec;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Draw {
    BioParams bio;
    EconParams econ;
};

Draw random_patches_draw(testo::Rng& rng) {
    const double delta = rng.uniform(0.01, 0.2);
    return {bio_of(rng.uniform(delta + 0.05, 1.5), rng.uniform(0.01, 1.2),
                   rng.uniform(0.05, 0.95)),
            econ_of(rng.uniform(0.1, 3.0), rng.uniform(0.5, 4.0), rng.uniform(0.05, 1.0),
                    delta)};
}

int run_cli_quiet(std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run(std::move(args), o, e);
    if (out) *out = o.str();
    return code;
}

}  // namespace

int main() {
    int failures = 0;
    auto criterion = [&](int idx, const char* name,
                         const std::function<std::string(bool&)>& fn) {
        bool ok = false;
        std::string detail;
        try {
            detail = fn(ok);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %02d %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    };

    const BioParams base_bio = bio_of(0.4, 0.05, 0.5);
    const EconParams econ_t20 = econ_of(1.5, 2.0, 0.15, 0.05);
    const EconParams econ_t4 = econ_of(0.3, 2.0, 0.15, 0.05);

    criterion(1, "closed-form reserve stock", [&](bool& ok) {
        const double x1 = patches_x1_star(base_bio, econ_t4);
        const double dev = std::fabs(x1 - 0.21875);
        ok = dev <= 1e-12;
        return "|x1*-0.21875| = " + fmt(dev) + " (tol 1e-12)";
    });

    criterion(2, "split-model equilibrium", [&](bool& ok) {
        const EquilibriumReport rep = global_equilibrium(base_bio, econ_t4);
        double worst = std::fabs(rep.x1_star - 0.875);
        worst = std::max(worst, std::fabs(rep.x2_star - 0.125));
        worst = std::max(worst, std::fabs(rep.e_star));
        worst = std::max(worst, std::fabs(rep.lambda_star.value_or(1.0)));
        worst = std::max(worst, std::fabs(rep.j_star));
        ok = worst <= 1e-12;
        return "max deviation = " + fmt(worst) + " (tol 1e-12)";
    });

    criterion(3, "cubic root certificate vs grid oracle", [&](bool& ok) {
        const auto t0 = std::chrono::steady_clock::now();
        testo::Rng rng(90210ull);
        double worst_res = 0.0, worst_gap = 0.0;
        auto probe = [&](const BioParams& bio, const EconParams& econ) {
            const double x2 = patches_x2_star(bio, econ);
            worst_res = std::max(worst_res,
                                 std::fabs(patches_cubic_residual(x2, bio, econ)));
            const double ref = testo::cubic_root_oracle(bio.r1, bio.r2, bio.alpha, econ.p,
                                                        econ.q, econ.c, econ.delta);
            worst_gap = std::max(worst_gap, std::fabs(x2 - ref));
        };
        probe(base_bio, econ_t4);  // built-in baseline
        for (int i = 0; i < 500; ++i) {
            const Draw d = random_patches_draw(rng);
            probe(d.bio, d.econ);
        }
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        ok = worst_res <= 1e-10 && worst_gap <= 1e-8 && secs < 5.0;
        return "max residual = " + fmt(worst_res) + " (tol 1e-10), max |root-oracle| = " +
               fmt(worst_gap) + " (tol 1e-8), " + fmt(secs) + " s (< 5)";
    });

    criterion(4, "stationary-system residuals at returned equilibria", [&](bool& ok) {
        double worst = 0.0;
        auto patches_case = [&](const BioParams& bio, const EconParams& econ) {
            const EquilibriumReport rep = patches_equilibrium(bio, econ);
            const auto [a, b] =
                el_residual({rep.x1_star, rep.x2_star}, bio, econ, EulerVariant::Patches);
            worst = std::max({worst, std::fabs(a), std::fabs(b)});
        };
        auto global_case = [&](const BioParams& bio, const EconParams& econ) {
            const EquilibriumReport rep = global_equilibrium(bio, econ);
            const auto [a, b] =
                el_residual({rep.x1_star, rep.x2_star}, bio, econ, EulerVariant::Global);
            worst = std::max({worst, std::fabs(a), std::fabs(b)});
        };
        patches_case(base_bio, econ_t20);
        patches_case(base_bio, econ_t4);
        BioParams with_r = base_bio;
        with_r.r = 0.28739;
        global_case(with_r, econ_t4);
        testo::Rng rng(5005ull);
        for (int i = 0; i < 200; ++i) {
            const Draw d = random_patches_draw(rng);
            patches_case(d.bio, d.econ);
        }
        for (int i = 0; i < 50; ++i) {
            Draw d = random_patches_draw(rng);
            d.bio.r = rng.uniform(0.05, 1.0);
            if (d.econ.p * d.econ.q <= d.econ.c * (1.0 - d.bio.alpha)) continue;
            global_case(d.bio, d.econ);
        }
        ok = worst <= 1e-9;
        return "max residual = " + fmt(worst) + " (tol 1e-9)";
    });

    criterion(5, "T identity at the break-even density", [&](bool& ok) {
        testo::Rng rng(777ull);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Draw d = random_patches_draw(rng);
            const double theta = d.econ.p * d.econ.q / d.econ.c;
            const double lhs = t_function(1.0 / theta, d.bio, d.econ);
            const double rhs = (1.0 - theta) * d.bio.r2 / (theta * theta);
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
        ok = worst <= 1e-12;
        return "max |T(1/theta) - (1-theta)r2/theta^2| = " + fmt(worst) + " (tol 1e-12)";
    });

    criterion(6, "normality classifier equals the density comparison", [&](bool& ok) {
        const auto t0 = std::chrono::steady_clock::now();
        testo::Rng rng(60606ull);
        int mismatches = 0, false_normals = 0;
        for (int i = 0; i < 1000; ++i) {
            const double delta = rng.uniform(0.02, 0.15);
            const double r1 = rng.uniform(delta + 0.05, 1.2);
            const double r2 = rng.uniform(0.01, 0.9 * r1);
            const double alpha = rng.uniform(0.02, 0.98);
            const BioParams bio = bio_of(r1, r2, alpha);
            EconParams econ = econ_of(1.0, 1.0, 1.0, delta);
            const double th0 = theta0(bio, econ);
            econ.p = th0 * rng.uniform(1.001, 3.0);  // theta = p just above threshold
            const NormalityDiagnosis nd = normality_diagnosis(bio, econ);
            const EquilibriumReport rep = patches_equilibrium(bio, econ);
            const bool direct = rep.x2_star / (1.0 - alpha) <= rep.x1_star / alpha;
            if ((nd.decision == NormalityDecision::Normal) != direct) ++mismatches;
        }
        for (int i = 0; i < 1000; ++i) {
            const double delta = rng.uniform(0.02, 0.15);
            const double r1 = rng.uniform(delta + 0.05, 1.2);
            const double r2 = (i % 10 == 0) ? r1 : rng.uniform(r1, 1.5);
            const BioParams bio = bio_of(r1, r2, rng.uniform(0.05, 0.95));
            const EconParams econ = econ_of(rng.uniform(0.2, 3.0), rng.uniform(0.5, 4.0),
                                            rng.uniform(0.05, 1.0), delta);
            const EquilibriumReport rep = patches_equilibrium(bio, econ);
            if (rep.normal) ++false_normals;
        }
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        ok = mismatches == 0 && false_normals == 0 && secs < 10.0;
        return std::to_string(mismatches) + " classifier mismatches, " +
               std::to_string(false_normals) + " normal despite r1 <= r2, " + fmt(secs) +
               " s (< 10)";
    });

    criterion(7, "aggregation identity of the split field", [&](bool& ok) {
        testo::Rng rng(424ull);
        double worst_excess = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double alpha = rng.uniform(0.1, 0.9);
            BioParams bio = bio_of(rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0), alpha);
            bio.r = rng.uniform(0.05, 1.0);
            const EconParams econ = econ_of(1.0, 1.0, 0.1, 0.05);
            DiffusionSpec spec;
            if (i % 2 == 0) {
                spec.mode = DiffusionMode::Constant;
                spec.value = rng.uniform(0.0, 25.0);
            } else {
                spec.mode = DiffusionMode::SizeDependent;
                spec.value = rng.uniform(0.0, 25.0);
            }
            const State s{rng.uniform(0.0, alpha), rng.uniform(0.0, 1.0 - alpha)};
            const RatePair v = global_reserve_rhs(s, 0.0, spec, bio, econ);
            const double phi = aggregate_growth(s.z(), *bio.r);
            const double flux = diffusion_flux(s, alpha, spec);
            const double tol =
                32.0 * kEps * std::max({1.0, std::fabs(flux), std::fabs(phi)});
            worst_excess = std::max(worst_excess, std::fabs(v.sum() - phi) - tol);
        }
        ok = worst_excess <= 0.0;
        return "worst slack = " + fmt(worst_excess) + " (<= 0 passes; tol 32*eps*scale)";
    });

    criterion(8, "equilibria are stationary under their own controls", [&](bool& ok) {
        const EquilibriumReport pat = patches_equilibrium(base_bio, econ_t20);
        double worst = stationarity_drift(ModelVariant::PatchesReserve,
                                          {pat.x1_star, pat.x2_star}, pat.e_star,
                                          lam_const(pat.lambda_star.value()), base_bio,
                                          econ_t20, 100.0, 0.01);
        BioParams with_r = base_bio;
        with_r.r = 0.28739;
        const EquilibriumReport glo = global_equilibrium(with_r, econ_t4);
        worst = std::max(worst, stationarity_drift(ModelVariant::GlobalReserve,
                                                   {glo.x1_star, glo.x2_star}, glo.e_star,
                                                   lam_const(0.0), with_r, econ_t4, 100.0,
                                                   0.01));
        ok = worst <= 1e-6;
        return "max drift over 100 time units = " + fmt(worst) + " (tol 1e-6)";
    });

    criterion(9, "open-access stationary conditions, analytic and by differences",
              [&](bool& ok) {
        double worst_analytic = 0.0, worst_fd = 0.0;
        auto probe = [&](const BioParams& bio, const EconParams& econ, double lambda) {
            const StationaryFOC foc = patches_open_stationary(bio, econ, lam_const(lambda));
            worst_analytic = std::max(worst_analytic, foc.residual_norm);
            const testo::OpenParams op{bio.r1, bio.r2, bio.alpha, lambda,
                                       econ.p,  econ.q,  econ.c};
            worst_fd = std::max(worst_fd,
                                testo::foc_fd_residual_oracle(op, econ.delta, foc.x1,
                                                              foc.x2, foc.p1, foc.p2,
                                                              foc.effort));
        };
        probe(base_bio, econ_t4, 20.0);
        testo::Rng rng(31337ull);
        for (int i = 0; i < 20; ++i) {
            const double delta = rng.uniform(0.03, 0.08);
            const BioParams bio = bio_of(rng.uniform(0.2, 0.6), rng.uniform(0.05, 0.4),
                                         rng.uniform(0.3, 0.7));
            const double q = rng.uniform(1.0, 3.0);
            const double c = rng.uniform(0.1, 0.3);
            const double theta = rng.uniform(2.0, 10.0);
            probe(bio, econ_of(theta * c / q, q, c, delta), rng.uniform(2.0, 30.0));
        }
        ok = worst_analytic <= 1e-8 && worst_fd <= 1e-6;
        return "max analytic residual = " + fmt(worst_analytic) +
               " (tol 1e-8), max difference residual = " + fmt(worst_fd) + " (tol 1e-6)";
    });

    criterion(10, "calibration round trip", [&](bool& ok) {
        const CalibrationResult cal =
            calibrate_r(base_bio, econ_t4, lam_const(20.0));
        const GoldenRule gr = clark_golden_rule(cal.r, econ_t4);
        const double effort_gap = std::fabs(gr.e_star - cal.e_bar);
        const double residual = std::fabs(clark_residual(cal.z_star, cal.r, econ_t4));
        ok = effort_gap <= 1e-8 && residual <= 1e-10;
        return "|E(r) - E_bar| = " + fmt(effort_gap) + " (tol 1e-8), golden-rule residual = " +
               fmt(residual) + " (tol 1e-10)";
    });

    criterion(11, "reference audit runs and reports deviations", [&](bool& ok) {
        const fs::path dir = fs::temp_directory_path() / "mpa_acceptance";
        fs::create_directories(dir);
        const fs::path csv = dir / "audit.csv";
        std::string table;
        const int code = run_cli_quiet({"reproduce-paper", "--out", csv.string()}, &table);
        if (code != 0) {
            ok = false;
            return std::string("exit code ") + std::to_string(code);
        }
        std::ifstream f(csv);
        std::string line;
        std::getline(f, line);  // header
        int rows = 0;
        double worst_exact = 0.0;
        bool deviations_reported = true;
        while (std::getline(f, line)) {
            ++rows;
            std::istringstream ss(line);
            std::string name, rep, comp, dev, kind;
            std::getline(ss, name, ',');
            std::getline(ss, rep, ',');
            std::getline(ss, comp, ',');
            std::getline(ss, dev, ',');
            std::getline(ss, kind, ',');
            const double d = std::stod(dev);
            const bool exact_row = name == "patches_x1_star" || name == "global_E_star" ||
                                   name == "global_x1_star" || name == "global_x2_star";
            if (exact_row) worst_exact = std::max(worst_exact, std::fabs(d));
            else if (std::fabs(d) <= 1e-6) deviations_reported = false;
        }
        ok = rows == 8 && worst_exact <= 1e-12 && deviations_reported &&
             table.find("deviation") != std::string::npos;
        return std::to_string(rows) + " rows, exact-row deviation max = " +
               fmt(worst_exact) + " (tol 1e-12), nonzero deviations " +
               (deviations_reported ? "reported" : "MISSING");
    });

    criterion(12, "revenue quadrature against the closed form", [&](bool& ok) {
        const EconParams econ = econ_t4;
        Trajectory flat;
        const double x2 = 0.31, E = 0.4, T = 50.0, h = 0.002;
        const int n = static_cast<int>(T / h);
        for (int k = 0; k <= n; ++k) {
            flat.times.push_back(k * h);
            flat.states.push_back({0.2, x2});
            flat.efforts.push_back(E);
            flat.rents.push_back(instantaneous_rent({0.2, x2}, E, 0.5, econ));
            flat.clamped.push_back(false);
        }
        const DiscountedRevenue rev = discounted_revenue(flat, econ, 0.5);
        const double factor = econ.p * econ.q * x2 / 0.5 - econ.c;
        const double closed = factor * E * (1.0 - std::exp(-econ.delta * T)) / econ.delta;
        const double rel = std::fabs(rev.value - closed) / std::fabs(closed);
        ok = rel <= 1e-8;
        return "relative quadrature error = " + fmt(rel) + " (tol 1e-8)";
    });

    criterion(13, "audit artifact is byte-identical across runs", [&](bool& ok) {
        const fs::path dir = fs::temp_directory_path() / "mpa_acceptance";
        fs::create_directories(dir);
        const fs::path a = dir / "det_a.csv";
        const fs::path b = dir / "det_b.csv";
        const int ca = run_cli_quiet({"reproduce-paper", "--quiet", "--out", a.string()});
        const int cb = run_cli_quiet({"reproduce-paper", "--quiet", "--out", b.string()});
        auto slurp = [](const fs::path& p) {
            std::ifstream f(p, std::ios::binary);
            std::ostringstream ss;
            ss << f.rdbuf();
            return ss.str();
        };
        const std::string bytes = slurp(a);
        ok = ca == 0 && cb == 0 && !bytes.empty() && bytes == slurp(b);
        return std::string(ok ? "identical artifacts" : "artifacts differ") + " (" +
               std::to_string(bytes.size()) + " bytes)";
    });

    std::printf("acceptance: %d/13 passed\n", 13 - failures);
    return failures;
}
