#include "ncspectra/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncspectra/analytic.hpp"
#include "ncspectra/error.hpp"
#include "ncspectra/fock.hpp"
#include "ncspectra/io.hpp"
#include "ncspectra/oracle.hpp"
#include "ncspectra/params.hpp"
#include "ncspectra/scan.hpp"

namespace ncspectra::cli {

namespace {

struct RunConfig {
    PhysParams phys;
    std::string model;
    std::string format = "csv";
    std::string out_path;

    int n1_max = analytic::kDefaultLevelBound;
    int n2_max = analytic::kDefaultLevelBound;
    std::optional<int> n_max;
    bool substitute_critical = false;

    int k = 6;
    double tol = oracle::kDefaultTolerance;
    std::vector<int> schedule = oracle::kDefaultSchedule;
    std::optional<double> l_ref;
    std::string shift_order = "first_order";

    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string levels;

    int N = 24;
    std::optional<int> margin;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IllPosed:
        case ErrorKind::InvalidField:
        case ErrorKind::NotAtCriticalPoint: return kIllPosed;
        case ErrorKind::NoSignChange:
        case ErrorKind::NotConverged: return kCheckFailed;
        default: return kUsage;
    }
}

std::string join_lines(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& item : items) s += item + "\n";
    return s;
}

std::vector<analytic::LevelIndex> parse_levels(const std::string& text) {
    std::vector<analytic::LevelIndex> out;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        analytic::LevelIndex l;
        char c1 = 0;
        char c2 = 0;
        std::istringstream t(token);
        if (!(t >> l.n1 >> c1 >> l.n2 >> c2 >> l.sigma_z) || c1 != ':' || c2 != ':' ||
            (l.sigma_z != 1 && l.sigma_z != -1) || l.n1 < 0 || l.n2 < 0) {
            throw Error(ErrorKind::InvalidArgument,
                        "level '" + token + "' must read n1:n2:sigma with sigma = +1 or -1");
        }
        out.push_back(l);
    }
    return out;
}

void require(bool condition, const std::string& message) {
    if (!condition) throw Error(ErrorKind::InvalidArgument, message);
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.model.empty(), "--model is required");
    const analytic::Model model = analytic::parse_model(cfg.model);
    const bool critical =
        model == analytic::Model::landau_critical || model == analytic::Model::oscillator_critical;
    const int n1 = critical ? cfg.n_max.value_or(cfg.n1_max) : cfg.n1_max;
    require(n1 >= 0 && cfg.n2_max >= 0 && cfg.n_max.value_or(0) >= 0,
            "enumeration bounds must be >= 0");
    const auto table = analytic::levels(model, cfg.phys, n1, cfg.n2_max, cfg.substitute_critical);
    if (cfg.format == "json") {
        out << io::to_json(table).dump(2) << '\n';
    } else {
        io::write_spectrum_csv(out, io::to_records(table));
    }
    return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.model.empty(), "--model is required");
    require(cfg.k >= 1, "--k must be >= 1");
    require(cfg.tol > 0.0, "--tol must be > 0");
    require(cfg.shift_order == "first_order" || cfg.shift_order == "exact",
            "--shift-order must be first_order or exact");
    const oracle::HamiltonianModel model{
        oracle::parse_model_id(cfg.model),
        cfg.shift_order == "exact" ? fock::ShiftOrder::exact : fock::ShiftOrder::first_order};
    const auto report = oracle::verify(model, cfg.phys, cfg.k, cfg.tol, cfg.schedule, cfg.l_ref);
    out << io::to_json(report).dump(2) << '\n';
    return report.matched_variant == "none" ? kCheckFailed : kSuccess;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.model.empty(), "--model is required");
    require(!cfg.param.empty(), "--param is required");
    require(cfg.steps >= 1, "--steps must be >= 1");
    scan::SweepSpec spec;
    spec.model = analytic::parse_model(cfg.model);
    spec.base = cfg.phys;
    spec.parameter = cfg.param;
    spec.grid = scan::linear_grid(cfg.from, cfg.to, cfg.steps);
    spec.levels = parse_levels(cfg.levels);
    const auto table = scan::sweep(spec);
    if (cfg.format == "json") {
        out << io::to_json(table).dump(2) << '\n';
    } else {
        io::write_sweep_csv(out, table);
    }
    return kSuccess;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out) {
    require(!cfg.model.empty(), "--model is required");
    const auto family = scan::parse_critical_family(cfg.model);
    const std::string param =
        !cfg.param.empty() ? cfg.param : (family == scan::CriticalFamily::landau ? "theta" : "B");
    const auto result = scan::locate_critical(family, cfg.phys, param);
    if (cfg.format == "json") {
        out << io::to_json(result).dump(2) << '\n';
    } else {
        auto opt = [](const std::optional<double>& v) {
            return v ? io::format_number(*v) : std::string{};
        };
        out << "family,parameter,closed_form,bisection,difference\n"
            << (family == scan::CriticalFamily::landau ? "landau" : "oscillator") << ','
            << param << ',' << opt(result.closed_form) << ',' << io::format_number(result.root)
            << ',' << opt(result.difference) << '\n';
    }
    return kSuccess;
}

int cmd_fock_check(const RunConfig& cfg, std::ostream& out) {
    const int margin = cfg.margin.value_or(fock::default_margin(cfg.N));
    const double l_ref = cfg.l_ref.value_or(default_l_ref(cfg.phys));
    const auto checks = fock::algebra_suite(cfg.phys, cfg.N, margin, l_ref);
    bool all = true;
    for (const auto& c : checks) all = all && c.passed;
    if (cfg.format == "json") {
        out << io::to_json(checks, cfg.N, margin, cfg.phys.theta).dump(2) << '\n';
    } else {
        out << "check,residual,corner_re,corner_im,passed\n";
        for (const auto& c : checks) {
            out << c.name << ',' << io::format_number(c.residual) << ','
                << io::format_number(c.corner.real()) << ',' << io::format_number(c.corner.imag())
                << ',' << (c.passed ? "true" : "false") << '\n';
        }
    }
    return all ? kSuccess : kCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Spectra of the relativistic Landau problem and Klein-Gordon oscillator in "
                 "non-commutative complex space",
                 "ncspectra"};
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.require_subcommand(1);

    auto* opt_m = app.add_option("--m", cfg.phys.m, "mass");
    auto* opt_e = app.add_option("--e", cfg.phys.e, "charge");
    app.add_option("--B", cfg.phys.B, "magnetic field");
    app.add_option("--omega", cfg.phys.omega, "oscillator frequency");
    app.add_option("--theta", cfg.phys.theta, "non-commutativity parameter");
    app.add_option("--s-z,--s_z", cfg.phys.s_z, "spin projection, +0.5 or -0.5");
    app.add_option("--model", cfg.model, "model id");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "output file (default: standard output)");

    app.add_option("--n1-max", cfg.n1_max, "largest n1 enumerated");
    app.add_option("--n2-max", cfg.n2_max, "largest n2 enumerated");
    app.add_option("--n-max", cfg.n_max, "largest index of a critical tower");
    app.add_flag("--substitute-critical", cfg.substitute_critical,
                 "evaluate the oscillator critical tower at the critical field");
    app.add_option("--k", cfg.k, "number of lowest eigenvalues compared");
    app.add_option("--tol", cfg.tol, "convergence and matching tolerance");
    app.add_option("--schedule", cfg.schedule, "ascending per-mode cutoffs")->delimiter(',');
    app.add_option("--l-ref", cfg.l_ref, "reference length of the Fock basis");
    app.add_option("--shift-order", cfg.shift_order, "first_order or exact");
    app.add_option("--param", cfg.param, "swept or solved parameter: theta, B, omega, m");
    app.add_option("--from", cfg.from, "first grid value");
    app.add_option("--to", cfg.to, "last grid value");
    app.add_option("--steps", cfg.steps, "number of grid points");
    app.add_option("--levels", cfg.levels, "levels n1:n2:sigma, comma separated");
    app.add_option("--N", cfg.N, "per-mode cutoff");
    app.add_option("--margin", cfg.margin, "interior projector margin (0: none)");

    auto* spectrum = app.add_subcommand("spectrum", "tabulate closed-form levels");
    auto* verify = app.add_subcommand("verify", "diagonalize and adjudicate closed forms");
    auto* scan_cmd = app.add_subcommand("scan", "sweep a parameter over a linear grid");
    auto* critical = app.add_subcommand("critical", "locate the critical point");
    auto* fock_check = app.add_subcommand("fock-check", "operator-algebra self-checks");
    for (auto* sub : {spectrum, verify, scan_cmd, critical, fock_check}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::ostringstream buffer;
    int code = kSuccess;
    try {
        if (!fock_check->parsed()) {
            if (opt_m->count() == 0 || opt_e->count() == 0) {
                err << "error: --m and --e are required\n";
                return kUsage;
            }
            if (const auto problems = validate(cfg.phys); !problems.empty()) {
                err << "error: invalid parameters\n" << join_lines(problems);
                return kUsage;
            }
        }
        if (spectrum->parsed()) {
            code = cmd_spectrum(cfg, buffer);
        } else if (verify->parsed()) {
            code = cmd_verify(cfg, buffer);
        } else if (scan_cmd->parsed()) {
            code = cmd_scan(cfg, buffer);
        } else if (critical->parsed()) {
            code = cmd_critical(cfg, buffer);
        } else {
            code = cmd_fock_check(cfg, buffer);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }

    if (cfg.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out_path << '\n';
            return kUsage;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace ncspectra::cli
