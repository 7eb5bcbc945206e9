// Command-line front end: run experiments, verify the energy estimates, scan
// corner coefficients, run convergence studies, and probe the amplification
// factor. Exit codes: 0 success/stable, 2 blow-up detected, 1 usage or
// configuration error.
#include <cstdio>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lw2d/experiment.hpp"
#include "lw2d/spectral.hpp"

namespace {

using namespace lw2d;

void usage(std::ostream& os) {
    os << "usage: lw2d <command> [options]\n"
          "\n"
          "commands:\n"
          "  run <config>                        run the experiment, write the CSV norm trace\n"
          "  verify <config>                     per-step identity/inequality verification\n"
          "  scan --delta-list d1,d2,... <config> corner-coefficient stability scan\n"
          "  converge <config> --refinements N   grid convergence against the exact solution\n"
          "  spectrum <config> [--samples N]     amplification factor diagnostics\n"
          "\n"
          "The config file is line-oriented 'key = value' text; '#' starts a comment.\n"
          "LW2D_OUTPUT_DIR overrides the output directory.\n";
}

int cmd_run(const ExperimentConfig& cfg) {
    const RunResult res = run_experiment(cfg);
    const NormTrace& tr = res.trace;
    std::printf("steps run        : %zu\n", tr.rows.size() - 1);
    std::printf("initial l2       : %.17g\n", tr.rows.front().l2);
    std::printf("final l2         : %.17g\n", tr.rows.back().l2);
    std::printf("nonincreasing    : %s\n", tr.nonincreasing ? "yes" : "no");
    if (!std::isnan(tr.cumulative_bound_ratio))
        std::printf("trace bound ratio: %.12g (must stay <= 1)\n", tr.cumulative_bound_ratio);
    if (tr.blew_up) std::printf("BLOW-UP at step %d\n", tr.blowup_step);
    if (!cfg.resolved_csv_path().empty())
        std::printf("csv              : %s\n", cfg.resolved_csv_path().c_str());
    return res.exit_code;
}

int cmd_verify(const ExperimentConfig& cfg) {
    if (cfg.geometry == GeomKind::Rectangle)
        throw ConfigError("verify: no estimate is claimed for the rectangle; use geometry = "
                          "periodic, half_space or quarter_space");
    ExperimentConfig c = cfg;
    c.diagnostics = true;
    c.output_csv.clear();
    const RunResult res = run_experiment(c);
    if (res.step_reports.empty()) throw ConfigError("verify: no steps were verified");

    std::map<std::string, double> worst_id;
    std::map<std::string, double> worst_slack;
    for (const VerifyResult& vr : res.step_reports) {
        for (const auto& [name, r] : vr.report.identity_residuals) {
            auto [it, fresh] = worst_id.try_emplace(name, std::abs(r));
            if (!fresh) it->second = std::max(it->second, std::abs(r));
        }
        for (const auto& [name, s] : vr.report.inequality_slacks) {
            auto [it, fresh] = worst_slack.try_emplace(name, s);
            if (!fresh) it->second = std::min(it->second, s);
        }
    }
    bool ok = true;
    std::printf("verified %zu steps\n", res.step_reports.size());
    for (const auto& [name, r] : worst_id) {
        const bool pass = r <= 1e-11;
        ok = ok && pass;
        std::printf("%-4s identity %-22s worst residual %.3e\n", pass ? "ok" : "FAIL", name.c_str(), r);
    }
    for (const auto& [name, s] : worst_slack) {
        const bool pass = s >= -1e-10;
        ok = ok && pass;
        std::printf("%-4s bound    %-22s worst slack    %+.3e\n", pass ? "ok" : "FAIL", name.c_str(), s);
    }
    if (res.trace.blew_up) {
        std::printf("BLOW-UP at step %d\n", res.trace.blowup_step);
        return 2;
    }
    return ok ? 0 : 1;
}

int cmd_scan(const ExperimentConfig& cfg, const std::string& delta_list) {
    std::vector<double> deltas;
    std::stringstream ss(delta_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            deltas.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("scan: bad delta '" + item + "' in --delta-list");
        }
    }
    if (deltas.empty()) throw ConfigError("scan: --delta-list is empty");

    std::printf("%-12s %-9s %-14s %s\n", "delta", "stable", "growth_rate", "blowup_step");
    for (const ScanRow& r : corner_scan(cfg, deltas)) {
        std::printf("%-12g %-9s %-14.6g %d\n", r.delta, r.stable ? "yes" : "no", r.growth_rate,
                    r.blowup_step);
    }
    return 0;
}

int cmd_converge(const ExperimentConfig& cfg, int refinements) {
    std::printf("%-8s %-14s %-14s %s\n", "n", "h", "l2_error", "order");
    for (const ConvergenceRow& r : convergence_study(cfg, refinements)) {
        if (std::isnan(r.order))
            std::printf("%-8d %-14.6g %-14.8g -\n", r.n, r.h, r.error);
        else
            std::printf("%-8d %-14.6g %-14.8g %.3f\n", r.n, r.h, r.error, r.order);
    }
    return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg, int samples) {
    const Params p = cfg.params();
    const double gmax = max_amplification(p, samples);
    const auto gpp = amplification_factor(p, Frequency::clamped(M_PI, M_PI));
    std::printf("alpha            : %.17g\n", p.alpha());
    std::printf("beta             : %.17g\n", p.beta());
    std::printf("alpha^2+beta^2   : %.17g\n", p.courant_sq());
    std::printf("cfl satisfied    : %s\n", p.cfl_satisfied() ? "yes" : "no");
    std::printf("max |g|          : %.17g  (%d samples per axis)\n", gmax, samples);
    std::printf("g(pi,pi)         : %.17g%+.17gi\n", gpp.real(), gpp.imag());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "-h" || args[0] == "--help") {
        usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? 1 : 0;
    }

    const std::string cmd = args[0];
    std::string config_path, delta_list;
    int refinements = 2, samples = 256;
    for (size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&](const char* opt) -> std::string {
            if (i + 1 >= args.size()) {
                std::cerr << "lw2d: " << opt << " needs an argument\n";
                std::exit(1);
            }
            return args[++i];
        };
        if (a == "--delta-list") delta_list = next("--delta-list");
        else if (a == "--refinements") refinements = std::stoi(next("--refinements"));
        else if (a == "--samples") samples = std::stoi(next("--samples"));
        else if (a == "--output-dir") setenv("LW2D_OUTPUT_DIR", next("--output-dir").c_str(), 1);
        else if (!a.empty() && a[0] == '-') {
            std::cerr << "lw2d: unknown option " << a << "\n";
            usage(std::cerr);
            return 1;
        } else if (config_path.empty()) config_path = a;
        else {
            std::cerr << "lw2d: unexpected argument " << a << "\n";
            return 1;
        }
    }
    if (config_path.empty()) {
        std::cerr << "lw2d: missing config file\n";
        usage(std::cerr);
        return 1;
    }

    try {
        const ExperimentConfig cfg = parse_config_file(config_path);
        if (cmd == "run") return cmd_run(cfg);
        if (cmd == "verify") return cmd_verify(cfg);
        if (cmd == "scan") return cmd_scan(cfg, delta_list);
        if (cmd == "converge") return cmd_converge(cfg, refinements);
        if (cmd == "spectrum") return cmd_spectrum(cfg, samples);
        std::cerr << "lw2d: unknown command '" << cmd << "'\n";
        usage(std::cerr);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "lw2d: " << e.what() << "\n";
        return 1;
    }
}
