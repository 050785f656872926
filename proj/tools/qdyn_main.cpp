// qdyn: command-line front end for the conjugated operator S, its orbits and
// its parameter/dynamical plane renderings.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdyn/errors.hpp"
#include "qdyn/io.hpp"
#include "qdyn/operator_s.hpp"
#include "qdyn/orbits.hpp"
#include "qdyn/render.hpp"
#include "qdyn/verify.hpp"

namespace {

const CLI::Validator kComplex(
    [](std::string& s) -> std::string {
        try {
            qdyn::parse_complex(s);
            return {};
        } catch (const std::invalid_argument& e) {
            return e.what();
        }
    },
    "COMPLEX", "complex");

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw qdyn::Error("cannot open " + path + " for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

struct RenderFlags {
    qdyn::Window window;
    qdyn::IterConfig cfg;
    std::string out;
    std::string labels;
    std::string report;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--re-min", window.re_min, "left edge")->capture_default_str();
        cmd->add_option("--re-max", window.re_max, "right edge")->capture_default_str();
        cmd->add_option("--im-min", window.im_min, "bottom edge")->capture_default_str();
        cmd->add_option("--im-max", window.im_max, "top edge")->capture_default_str();
        cmd->add_option("--width", window.width, "mesh columns")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--height", window.height, "mesh rows")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--max-iter", cfg.max_iter, "iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--tol", cfg.tol, "convergence tolerance")->capture_default_str();
        cmd->add_option("--out", out, "PPM output path")->required();
        cmd->add_option("--labels", labels, "PGM basin-label output path");
        cmd->add_option("--report", report, "JSON report path (default: stdout)");
    }

    void write(const qdyn::RasterGrid& grid, const qdyn::Palette& palette) const {
        qdyn::write_ppm(grid, palette, out);
        if (!labels.empty()) qdyn::write_pgm(grid, labels);
        emit(qdyn::render_report_json(grid), report);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamics of the conjugated operator S of four third-order root-finding families"};
    app.require_subcommand(1);

    std::string a_text = "0.75";
    auto add_a = [&](CLI::App* cmd) { cmd->add_option("--A", a_text, "parameter A")->required()->check(kComplex); };

    auto* fixed_cmd = app.add_subcommand("fixed-points", "fixed points of S with stability");
    add_a(fixed_cmd);
    auto* crit_cmd = app.add_subcommand("critical-points", "critical points of S");
    add_a(crit_cmd);
    auto* stab_cmd = app.add_subcommand("stability", "multiplier moduli and stability disks");
    add_a(stab_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "real-A sweeps as CSV");
    std::string sweep_kind;
    double sweep_min = -5.0, sweep_max = 5.0;
    int sweep_n = 1001;
    std::string sweep_out;
    sweep_cmd->add_option("kind", sweep_kind, "fixed | critical | profile")
        ->required()
        ->check(CLI::IsMember({"fixed", "critical", "profile"}));
    sweep_cmd->add_option("--min", sweep_min, "smallest A")->capture_default_str();
    sweep_cmd->add_option("--max", sweep_max, "largest A")->capture_default_str();
    sweep_cmd->add_option("--n", sweep_n, "number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sweep_out, "CSV path (default: stdout)");

    auto* orbit_cmd = app.add_subcommand("orbits", "periodic orbits of exact period");
    add_a(orbit_cmd);
    int period = 2;
    std::string orbit_out;
    orbit_cmd->add_option("--period", period, "period (1..3)")->capture_default_str()->check(CLI::Range(1, 3));
    orbit_cmd->add_option("--out", orbit_out, "JSON path (default: stdout)");

    auto* dyn_cmd = app.add_subcommand("dyn-plane", "dynamical plane of S for fixed A");
    add_a(dyn_cmd);
    RenderFlags dyn_flags;
    dyn_flags.window = {-3.0, 3.0, -3.0, 3.0, 200, 200};
    dyn_flags.add_to(dyn_cmd);
    std::string attractor_mode = "auto";
    dyn_cmd->add_option("--attractors", attractor_mode, "auto | none")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "none"}));

    auto* param_cmd = app.add_subcommand("param-plane", "parameter plane of a free critical point");
    RenderFlags param_flags;
    param_flags.window = {-1.0, 3.0, -2.0, 2.0, 200, 200};
    param_flags.add_to(param_cmd);
    std::string critic = "zc1";
    param_cmd->add_option("--critic", critic, "zc1 | zc2")->capture_default_str()->check(CLI::IsMember({"zc1", "zc2"}));

    auto* verify_cmd = app.add_subcommand("verify", "run the seeded property suites");
    std::uint64_t seed = 7;
    verify_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        const qdyn::Complex A = qdyn::parse_complex(a_text);
        if (*fixed_cmd) {
            emit(qdyn::fixed_points_json(A, qdyn::fixed_points(A)), "");
        } else if (*crit_cmd) {
            emit(qdyn::critical_points_json(A, qdyn::critical_points(A)), "");
        } else if (*stab_cmd) {
            emit(qdyn::stability_json(A), "");
        } else if (*sweep_cmd) {
            std::string csv;
            if (sweep_kind == "fixed") csv = qdyn::to_csv(qdyn::sweep_fixed_points(sweep_min, sweep_max, sweep_n));
            else if (sweep_kind == "critical") csv = qdyn::to_csv(qdyn::sweep_critical_points(sweep_min, sweep_max, sweep_n));
            else csv = qdyn::to_csv(qdyn::stability_profile(sweep_min, sweep_max, sweep_n));
            emit(csv, sweep_out);
        } else if (*orbit_cmd) {
            emit(qdyn::orbits_json(A, qdyn::find_periodic_orbits(A, period)), orbit_out);
        } else if (*dyn_cmd) {
            std::vector<qdyn::Complex> attractors;
            if (attractor_mode == "auto") attractors = qdyn::analytic_attractors(A);
            const auto grid = qdyn::dyn_plane(A, dyn_flags.window, dyn_flags.cfg, attractors, qdyn::threads_from_env());
            dyn_flags.write(grid, qdyn::dyn_palette());
        } else if (*param_cmd) {
            const auto sel = critic == "zc1" ? qdyn::CriticSelector::Zc1 : qdyn::CriticSelector::Zc2;
            const auto grid = qdyn::param_plane(param_flags.window, param_flags.cfg, sel, qdyn::threads_from_env());
            param_flags.write(grid, qdyn::param_palette());
        } else if (*verify_cmd) {
            bool ok = true;
            std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
            for (const auto& r : qdyn::run_verification(seed)) {
                std::printf("%-34s n=%-4d max deviation %.3e (threshold %.0e) %s\n", r.name.c_str(), r.samples,
                            r.max_deviation, r.threshold, r.passed() ? "PASS" : "FAIL");
                ok = ok && r.passed();
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
