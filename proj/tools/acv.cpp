// Command-line driver: computes bad faces, candidate asymptotic critical
// values, and witness curves for a polynomial given in a problem file.

#include "acv/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int run(int argc, char** argv) {
    CLI::App app{"asymptotic critical values via Newton polyhedra and toric charts"};
    app.require_subcommand(1);

    std::string problem_path, chart_path, ustar_text, out_path;
    uint64_t seed = 0;
    bool seed_set = false, nondegenerate = false;
    double tmin = 1e-7, tmax = 1e-1;
    int points = 25;
    int curve_index = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("problem", problem_path, "problem file")->required();
        cmd->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--chart", chart_path, "file with the n x n chart matrix W");
        cmd->add_option("--ustar", ustar_text,
                        "comma-separated base point override (rationals or a+bi)");
        cmd->add_flag("--nondegenerate", nondegenerate,
                      "assert non-degeneracy at infinity (appends the {0} marker)");
        cmd->add_option("--tmin", tmin, "smallest |t| on the verification grid");
        cmd->add_option("--tmax", tmax, "largest |t| on the verification grid");
        cmd->add_option("--points", points, "grid size");
        cmd->add_option("--out", out_path, "write output to this file");
    };

    auto* badfaces = app.add_subcommand("badfaces", "enumerate bad faces");
    auto* values = app.add_subcommand("values", "candidate asymptotic critical values");
    auto* witness = app.add_subcommand("witness", "synthesize and verify witness curves");
    auto* bound = app.add_subcommand("bound", "volume bound on #K_inf");
    auto* emit = app.add_subcommand("emit-curve", "CSV samples of a witness curve");
    emit->add_option("--index", curve_index, "which synthesized curve to emit");
    for (auto* cmd : {badfaces, values, witness, bound, emit}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    auto spec = acv::parse_problem_file(problem_path);
    if (seed_set) spec.seed = seed;
    if (const char* env = std::getenv("ACV_SEED"))
        spec.seed = std::strtoull(env, nullptr, 10);
    if (nondegenerate) spec.nondegenerate_at_infinity = true;
    if (!chart_path.empty()) spec.user_w = acv::parse_chart_file(chart_path, spec.n);
    if (!ustar_text.empty())
        spec.u_star_override = acv::parse_ustar(ustar_text, spec.n);

    spec.grid.t_min = tmin;
    spec.grid.t_max = tmax;
    spec.grid.points = points;
    std::string command = app.get_subcommands()[0]->get_name();
    auto rep = acv::run_pipeline(spec, command == "emit-curve" ? "witness" : command);

    std::string output;
    if (command == "emit-curve") {
        const acv::CurveResult* chosen = nullptr;
        int idx = 0;
        for (const auto& fr : rep.faces)
            for (const auto& c : fr.curves) {
                if (!c.error.empty()) continue;
                if (idx == curve_index) chosen = &c;
                ++idx;
            }
        if (!chosen) throw acv::acv_error("emit-curve: no such curve index");
        acv::GridConfig grid;
        grid.t_min = tmin;
        grid.t_max = tmax;
        grid.points = points;
        output = acv::emit_curve_samples(spec.f, chosen->witness, grid);
    } else {
        output = acv::report_to_json(rep).dump(2) + "\n";
    }

    if (out_path.empty()) {
        std::cout << output;
    } else {
        std::ofstream out(out_path);
        out << output;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const acv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const acv::ConstantTermPresent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const acv::SolverBudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const acv::Order0SolveFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const acv::acv_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
