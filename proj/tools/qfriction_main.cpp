// Command line front end: figure data, single-point computation,
// parameter sweeps, Monte Carlo runs and preset handling.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfriction/constants.hpp"
#include "qfriction/dispersion.hpp"
#include "qfriction/errors.hpp"
#include "qfriction/figures.hpp"
#include "qfriction/friction.hpp"
#include "qfriction/montecarlo.hpp"
#include "qfriction/presets.hpp"
#include "qfriction/system.hpp"
#include "qfriction/table.hpp"
#include "qfriction/version.hpp"

namespace {

using namespace qfriction;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Parameter handling: SI values with an optional unit suffix ("3e-10m",
// "1.33K", "2e-19m2"). A bare number is accepted as already being SI.

struct Flag {
    std::string text;
    bool present() const { return !text.empty(); }
};

double parse_quantity(const std::string& text, const std::string& unit,
                      const std::string& flag_name) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    std::string suffix = end ? std::string(end) : std::string();
    while (!suffix.empty() && suffix.front() == ' ') suffix.erase(suffix.begin());
    if (!suffix.empty() && suffix != unit) {
        throw std::invalid_argument("flag " + flag_name + " expects a value in '" +
                                    unit + "', got suffix '" + suffix + "'");
    }
    if (end == text.c_str()) {
        throw std::invalid_argument("flag " + flag_name +
                                    " is not a number: '" + text + "'");
    }
    return value;
}

/// Parameter pool resolved from a preset plus explicit flags.
struct Params {
    std::optional<double> particle_mass;      // kg
    std::optional<double> gas_particle_mass;  // kg
    std::optional<double> cross_section;      // m^2
    std::optional<double> number_density;     // m^-3
    std::optional<double> temperature;        // K
    std::optional<double> lambda;             // m
    std::optional<double> friction;           // kg/s
    std::optional<double> diffusion;          // m^2/s
    std::optional<double> time;               // s
    std::optional<double> alpha;              // 1
    std::optional<double> theta;              // 1

    double need(const std::optional<double>& field, const char* what) const {
        if (!field) {
            throw std::invalid_argument(
                std::string("missing parameter: ") + what +
                " (provide the flag or a preset that defines it)");
        }
        return *field;
    }

    double mean_free_path_value() const {
        if (lambda) return *lambda;
        if (cross_section && number_density) {
            return qfriction::mean_free_path(*cross_section, *number_density);
        }
        throw std::invalid_argument(
            "missing parameter: mean free path (--lambda, or --sigma with --n)");
    }

    double theta_value() const {
        if (theta) return *theta;
        const double m = need(particle_mass, "particle mass (--m)");
        const double T = need(temperature, "temperature (--T)");
        return T / characteristic_temperature(m, mean_free_path_value());
    }
};

struct ParamFlags {
    Flag m, M, sigma, n, T, lambda, b, D, t, alpha, theta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--m", m.text, "particle mass [kg]");
        cmd->add_option("--M", M.text, "gas particle mass [kg]");
        cmd->add_option("--sigma", sigma.text, "collision cross-section [m2]");
        cmd->add_option("--n", n.text, "gas number density [m-3]");
        cmd->add_option("--T", T.text, "temperature [K]");
        cmd->add_option("--lambda", lambda.text, "mean free path [m]");
        cmd->add_option("--b", b.text, "friction coefficient [kg/s]");
        cmd->add_option("--D", D.text, "diffusion coefficient [m2/s]");
        cmd->add_option("--t", t.text, "time [s]");
        cmd->add_option("--alpha", alpha.text, "diffusion exponent in [0,1]");
        cmd->add_option("--theta", theta.text, "reduced temperature T/T_lambda");
    }

    Params resolve(const std::string& preset_name) const {
        Params params;
        if (!preset_name.empty()) {
            const Preset preset = load_preset(preset_name);
            params.particle_mass = preset.particle_mass;
            if (preset.gas_particle_mass > 0.0)
                params.gas_particle_mass = preset.gas_particle_mass;
            if (preset.has_mean_free_path())
                params.lambda = preset.mean_free_path;
            if (preset.cross_section > 0.0)
                params.cross_section = preset.cross_section;
            if (preset.number_density > 0.0)
                params.number_density = preset.number_density;
            if (preset.has_temperature()) params.temperature = preset.temperature;
        }
        if (m.present()) params.particle_mass = parse_quantity(m.text, "kg", "--m");
        if (M.present()) params.gas_particle_mass = parse_quantity(M.text, "kg", "--M");
        if (sigma.present()) params.cross_section = parse_quantity(sigma.text, "m2", "--sigma");
        if (n.present()) params.number_density = parse_quantity(n.text, "m-3", "--n");
        if (T.present()) params.temperature = parse_quantity(T.text, "K", "--T");
        if (lambda.present()) params.lambda = parse_quantity(lambda.text, "m", "--lambda");
        if (b.present()) params.friction = parse_quantity(b.text, "kg/s", "--b");
        if (D.present()) params.diffusion = parse_quantity(D.text, "m2/s", "--D");
        if (t.present()) params.time = parse_quantity(t.text, "s", "--t");
        if (alpha.present()) params.alpha = parse_quantity(alpha.text, "1", "--alpha");
        if (theta.present()) params.theta = parse_quantity(theta.text, "1", "--theta");
        return params;
    }
};

// ---------------------------------------------------------------------------
// Quantity registry for compute/sweep.

struct QuantityResult {
    std::vector<std::pair<std::string, double>> values;
    std::string unit;
    std::string form;
    std::string formula;
};

FrictionResult derive_friction(const Params& params, const std::string& form) {
    const double lam = params.mean_free_path_value();
    if (form == "residual") return residual_friction(lam);
    if (form == "classical") {
        return classical_friction(params.need(params.particle_mass, "particle mass (--m)"),
                                  params.need(params.temperature, "temperature (--T)"),
                                  lam);
    }
    if (form == "b") {
        const double theta = params.theta_value();
        FrictionResult result;
        result.reduced = friction_form_b(theta);
        result.friction = result.reduced * constants::hbar / (lam * lam);
        result.form = FrictionForm::form_b;
        result.theta = theta;
        return result;
    }
    if (form == "a" || form.empty()) {
        // Default: residual at T = 0 or when no temperature is given.
        if (form.empty() &&
            (!params.temperature || *params.temperature == 0.0)) {
            return residual_friction(lam);
        }
        return friction_form_a(params.need(params.particle_mass, "particle mass (--m)"),
                               params.need(params.temperature, "temperature (--T)"),
                               lam);
    }
    throw std::invalid_argument("unknown friction form '" + form +
                                "'; expected classical, residual, a or b");
}

const char* friction_formula(FrictionForm form) {
    switch (form) {
        case FrictionForm::classical: return "b = sqrt(m kB T)/lambda";
        case FrictionForm::residual: return "b = hbar/lambda^2";
        case FrictionForm::form_a:
            return "b = sqrt(m kB T/(lambda^2 - lambda_T^2 ln(1+lambda^2/lambda_T^2)))";
        case FrictionForm::form_b:
            return "b lambda^2/hbar = sqrt(theta/(1 - ln(1+theta)/theta))";
    }
    return "";
}

const char* friction_form_name(FrictionForm form) {
    switch (form) {
        case FrictionForm::classical: return "classical";
        case FrictionForm::residual: return "residual";
        case FrictionForm::form_a: return "form_a";
        case FrictionForm::form_b: return "form_b";
    }
    return "";
}

QuantityResult evaluate_quantity(const std::string& name, const Params& params,
                                 const std::string& form, const std::string& law) {
    QuantityResult result;
    if (name == "lambda" || name == "mean-free-path") {
        const double value = params.lambda
            ? *params.lambda
            : qfriction::mean_free_path(
                  params.need(params.cross_section, "cross-section (--sigma)"),
                  params.need(params.number_density, "number density (--n)"));
        result.values = {{"lambda", value}};
        result.unit = "m";
        result.formula = "lambda = 1/(sigma n)";
        return result;
    }
    if (name == "lambda_T" || name == "thermal-wavelength") {
        const double value = thermal_wavelength(
            params.need(params.particle_mass, "particle mass (--m)"),
            params.need(params.temperature, "temperature (--T)"));
        result.values = {{"lambda_T", value}};
        result.unit = "m";
        result.formula = "lambda_T = hbar/(2 sqrt(m kB T)); infinite at T = 0";
        return result;
    }
    if (name == "T_lambda" || name == "characteristic-temperature") {
        const double value = characteristic_temperature(
            params.need(params.particle_mass, "particle mass (--m)"),
            params.mean_free_path_value());
        result.values = {{"T_lambda", value}};
        result.unit = "K";
        result.formula = "T_lambda = hbar^2/(4 m lambda^2 kB)";
        return result;
    }
    if (name == "theta" || name == "reduced-temperature") {
        result.values = {{"theta", params.theta_value()}};
        result.unit = "1";
        result.formula = "theta = T/T_lambda";
        return result;
    }
    if (name == "tau" || name == "collision-time") {
        const double value = residual_collision_time(
            params.need(params.particle_mass, "particle mass (--m)"),
            params.mean_free_path_value());
        result.values = {{"tau", value}};
        result.unit = "s";
        result.formula = "tau = m lambda^2/hbar";
        return result;
    }
    if (name == "b" || name == "friction") {
        const FrictionResult friction = derive_friction(params, form);
        result.values = {{"b", friction.friction},
                         {"b_reduced", friction.reduced}};
        result.unit = "kg/s";
        result.form = friction_form_name(friction.form);
        result.formula = friction_formula(friction.form);
        return result;
    }
    if (name == "D" || name == "diffusion") {
        if (form == "classical") {
            const double value = classical_diffusion(
                params.need(params.particle_mass, "particle mass (--m)"),
                params.need(params.temperature, "temperature (--T)"),
                params.mean_free_path_value());
            result.values = {{"D", value}};
            result.unit = "m2/s";
            result.form = "classical";
            result.formula = "D = lambda sqrt(kB T/m)";
            return result;
        }
        const double friction =
            params.friction ? *params.friction
                            : derive_friction(params, "").friction;
        const double value = einstein_diffusion(
            params.need(params.temperature, "temperature (--T)"), friction);
        result.values = {{"D", value}};
        result.unit = "m2/s";
        result.form = "einstein";
        result.formula = "D = kB T/b";
        return result;
    }
    if (name == "D-deficit" || name == "diffusion-deficit") {
        const DiffusionDeviation dev = semiclassical_deviation(params.theta_value());
        result.values = {{"deficit", 1.0 - dev.exact_ratio},
                         {"exact_ratio", dev.exact_ratio},
                         {"series_term", dev.series_term},
                         {"comparator_term", dev.comparator_term}};
        result.unit = "1";
        result.formula =
            "D/D_cl = sqrt(1 - ln(1+theta)/theta); series deficit 1/(4 theta); "
            "heavy-particle comparator +1/(4 theta)";
        return result;
    }
    if (name == "T_eff" || name == "effective-temperature") {
        result.values = {{"T_eff", effective_temperature(
                                        params.need(params.time, "time (--t)"))}};
        result.unit = "K";
        result.formula = "T(t) = hbar/(4 kB t)";
        return result;
    }
    if (name == "D_t" || name == "time-dependent-diffusion") {
        const TimeDependentDiffusion d = time_dependent_diffusion(
            params.need(params.particle_mass, "particle mass (--m)"),
            params.mean_free_path_value(),
            params.need(params.time, "time (--t)"));
        result.values = {{"D_t", d.diffusion}, {"T_eff", d.effective_temperature}};
        result.unit = "m2/s";
        result.formula = "D(t) = sigma_x^2/(2t) = lambda sqrt(hbar/(4 m t))";
        return result;
    }
    if (name == "sigma2" || name == "dispersion") {
        const double t = params.need(params.time, "time (--t)");
        double value = 0.0;
        if (law == "einstein") {
            value = einstein_law(params.need(params.diffusion, "diffusion (--D)"), t);
            result.formula = "sigma_x^2 = 2 D t";
        } else if (law == "sqrt" || law.empty()) {
            const double b = params.friction ? *params.friction
                                             : derive_friction(params, "").friction;
            value = sqrt_dispersion(
                params.need(params.particle_mass, "particle mass (--m)"), b, t);
            result.formula = "sigma_x^2 = hbar sqrt(t/(m b))";
        } else if (law == "gas") {
            value = gas_sqrt_dispersion(
                params.need(params.particle_mass, "particle mass (--m)"),
                params.mean_free_path_value(), t);
            result.formula = "sigma_x^2 = lambda sqrt(hbar t/m)";
        } else if (law == "thermal") {
            const double m = params.need(params.particle_mass, "particle mass (--m)");
            const double T = params.need(params.temperature, "temperature (--T)");
            const double lam = params.mean_free_path_value();
            ParticleGasSystem system(m, params.gas_particle_mass.value_or(1e3 * m),
                                     1.0 / lam, 1.0, T);
            SystemScales scales = derive_scales(system);
            value = dispersion_at_temperature(system, scales, t);
            result.formula =
                "sigma_x^2 - lambda_T^2 ln(1+sigma_x^2/lambda_T^2) = 2 D t";
        } else if (law == "quantum-gas") {
            value = solve_quantum_gas_dispersion(
                params.need(params.particle_mass, "particle mass (--m)"),
                params.mean_free_path_value(), t);
            result.formula =
                "sigma_x^4/lambda^2 - 2 sigma_x^2 + 2 lambda^2 "
                "ln(1+sigma_x^2/lambda^2) = hbar t/m";
        } else if (law == "cbrt") {
            value = cbrt_dispersion(
                params.need(params.particle_mass, "particle mass (--m)"),
                params.mean_free_path_value(), t);
            result.formula = "sigma_x^2 = lambda (3 lambda hbar t/(2 m))^(1/3)";
        } else if (law == "log") {
            const double b = params.friction ? *params.friction
                                             : derive_friction(params, "").friction;
            value = log_dispersion(
                params.need(params.particle_mass, "particle mass (--m)"), b, t);
            result.formula = "sigma_x^2 = (hbar/b)(ln sqrt(b t/m) + 1)";
        } else if (law == "combined") {
            value = combined_dispersion(
                params.need(params.particle_mass, "particle mass (--m)"),
                params.mean_free_path_value(), t);
            result.formula =
                "sigma_x^2 = lambda sqrt(hbar t/m) + lambda^2 (ln(sqrt(hbar "
                "t/m)/lambda)+1)/3";
        } else if (law == "fractional") {
            const double b = params.friction ? *params.friction
                                             : derive_friction(params, "").friction;
            value = fractional_dispersion(
                params.need(params.alpha, "exponent (--alpha)"),
                params.need(params.particle_mass, "particle mass (--m)"), b, t);
            result.formula = "sigma_x^2 = (hbar/b)(b t/m)^(2 alpha)";
        } else {
            throw std::invalid_argument(
                "unknown dispersion law '" + law +
                "'; expected einstein, sqrt, gas, thermal, quantum-gas, cbrt, "
                "log, combined or fractional");
        }
        result.values = {{"sigma2", value}};
        result.unit = "m2";
        result.form = law.empty() ? "sqrt" : law;
        return result;
    }
    throw std::invalid_argument(
        "unknown quantity '" + name +
        "'; expected one of: lambda, lambda_T, T_lambda, theta, tau, b, D, "
        "D-deficit, T_eff, D_t, sigma2");
}

// ---------------------------------------------------------------------------
// Shared output flags.

struct OutputFlags {
    std::string path;
    std::string format = "csv";

    void attach(CLI::App* cmd) {
        cmd->add_option("--output", path, "output file (default: stdout)");
        cmd->add_option("--format", format, "csv, json or svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
    }

    void emit(const CurveTable& table, const SvgStyle& style) const {
        const TableFormat fmt = parse_format(format);
        if (path.empty()) {
            switch (fmt) {
                case TableFormat::csv: write_csv(table, std::cout); break;
                case TableFormat::json: write_json(table, std::cout); break;
                case TableFormat::svg: write_svg(table, style, std::cout); break;
            }
        } else {
            write_table_file(table, path, fmt, style);
            std::cerr << "wrote " << path << "\n";
        }
    }
};

void add_run_metadata(CurveTable& table,
                      const std::vector<std::pair<std::string, std::string>>& entries) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.reserve(entries.size() + table.metadata.size());
    for (const auto& entry : entries) meta.push_back(entry);
    for (auto& entry : table.metadata) meta.push_back(std::move(entry));
    table.metadata = std::move(meta);
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"quantum friction and dispersion toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);

    // fig1 -----------------------------------------------------------------
    auto* fig1 = app.add_subcommand(
        "fig1", "reduced friction coefficient vs reduced temperature");
    double theta_min = 1e-3, theta_max = 1e3;
    int fig1_points = 61;
    fig1->add_option("--theta-min", theta_min, "lower end of the theta grid");
    fig1->add_option("--theta-max", theta_max, "upper end of the theta grid");
    fig1->add_option("--points", fig1_points, "grid size")->check(CLI::PositiveNumber);
    OutputFlags fig1_out;
    fig1_out.attach(fig1);

    // fig2 -----------------------------------------------------------------
    auto* fig2 = app.add_subcommand(
        "fig2", "reduced dispersion vs reduced time at zero temperature");
    double s_max = 1e4, fig2_rel_tol = 1e-9;
    int fig2_points = 81;
    fig2->add_option("--s-max", s_max, "upper end of the reduced time grid");
    fig2->add_option("--points", fig2_points, "grid size")->check(CLI::PositiveNumber);
    fig2->add_option("--rel-tol", fig2_rel_tol, "integrator relative tolerance");
    OutputFlags fig2_out;
    fig2_out.attach(fig2);

    // compute ----------------------------------------------------------------
    auto* compute = app.add_subcommand("compute", "evaluate a single quantity");
    std::string quantity;
    compute->add_option("quantity", quantity,
                        "lambda, lambda_T, T_lambda, theta, tau, b, D, "
                        "D-deficit, T_eff, D_t or sigma2")
        ->required();
    std::string compute_preset, compute_form, compute_law;
    compute->add_option("--preset", compute_preset, "preset name or JSON path");
    compute->add_option("--form", compute_form,
                        "friction/diffusion form: classical, residual, a, b");
    compute->add_option("--law", compute_law,
                        "dispersion law for sigma2 (see --help-all)");
    ParamFlags compute_params;
    compute_params.attach(compute);
    std::string compute_output;
    compute->add_option("--output", compute_output, "write the result as JSON");

    // sweep ------------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "evaluate a quantity over a range");
    std::string sweep_quantity, sweep_param;
    sweep->add_option("quantity", sweep_quantity, "quantity to evaluate")->required();
    sweep->add_option("--param", sweep_param, "parameter to vary (flag name without --)")
        ->required();
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_points = 61;
    bool sweep_linear = false;
    sweep->add_option("--from", sweep_from, "range start")->required();
    sweep->add_option("--to", sweep_to, "range end")->required();
    sweep->add_option("--points", sweep_points, "grid size")->check(CLI::PositiveNumber);
    sweep->add_flag("--linear", sweep_linear, "linear grid (default logarithmic)");
    std::string sweep_preset, sweep_form, sweep_law;
    sweep->add_option("--preset", sweep_preset, "preset name or JSON path");
    sweep->add_option("--form", sweep_form, "friction/diffusion form");
    sweep->add_option("--law", sweep_law, "dispersion law for sigma2");
    ParamFlags sweep_params;
    sweep_params.attach(sweep);
    OutputFlags sweep_out;
    sweep_out.attach(sweep);

    // simulate -----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo ensemble run");
    std::string scheme_name;
    simulate->add_option("scheme", scheme_name, "langevin, quantum-bath or collisional")
        ->required()
        ->check(CLI::IsMember({"langevin", "quantum-bath", "collisional"}));
    int n_traj = 20000, threads = 1, points_per_decade = 32;
    std::uint64_t seed = 1;
    double sim_dt = 0.0, sim_t_end = 0.0, sim_t_start = -1.0;
    std::string sim_preset;
    bool constant_mode = false;
    simulate->add_option("--n-traj", n_traj, "ensemble size (>= 100)");
    simulate->add_option("--dt", sim_dt, "time step (default scheme-specific)");
    simulate->add_option("--t-end", sim_t_end, "end time (default scheme-specific)");
    simulate->add_option("--t-start", sim_t_start, "start time (quantum-bath)");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--threads", threads, "worker threads (results identical)");
    simulate->add_option("--points-per-decade", points_per_decade, "statistics grid density");
    simulate->add_option("--preset", sim_preset,
                         "run in SI units from a preset (default: reduced units)");
    simulate->add_flag("--constant-T", constant_mode,
                       "constant-temperature mode for quantum-bath");
    std::string sim_T_flag;
    simulate->add_option("--T", sim_T_flag, "temperature [K] (with --preset)");
    OutputFlags sim_out;
    sim_out.format = "csv";
    simulate->add_option("--output", sim_out.path, "output file (default: stdout)");
    simulate->add_option("--format", sim_out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // preset-list ----------------------------------------------------------
    auto* preset_list = app.add_subcommand("preset-list", "list available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (fig1->parsed()) {
        CurveTable table = friction_curve_table(theta_min, theta_max, fig1_points);
        SvgStyle style;
        style.log_x = true;
        style.log_y = true;
        style.title = "reduced friction coefficient vs reduced temperature";
        fig1_out.emit(table, style);
        return 0;
    }

    if (fig2->parsed()) {
        CurveTable table = dispersion_curve_table(s_max, fig2_points, fig2_rel_tol);
        SvgStyle style;
        style.log_x = true;
        style.log_y = true;
        style.title = "reduced dispersion vs reduced time";
        fig2_out.emit(table, style);
        return 0;
    }

    if (compute->parsed()) {
        const Params params = compute_params.resolve(compute_preset);
        const QuantityResult result =
            evaluate_quantity(quantity, params, compute_form, compute_law);
        bool primary = true;
        for (const auto& [name, value] : result.values) {
            std::cout << name << " = " << format_value(value);
            if (primary && result.unit != "1") std::cout << " " << result.unit;
            std::cout << "\n";
            primary = false;
        }
        if (!result.form.empty()) std::cout << "form: " << result.form << "\n";
        std::cout << "formula: " << result.formula << "\n";
        if (!compute_output.empty()) {
            nlohmann::ordered_json doc;
            doc["schema"] = "qfriction-scalar";
            doc["schema_version"] = 1;
            doc["library_version"] = version_string;
            doc["quantity"] = quantity;
            for (const auto& [name, value] : result.values) doc["values"][name] = value;
            doc["unit"] = result.unit;
            doc["form"] = result.form;
            doc["formula"] = result.formula;
            std::ofstream out(compute_output);
            if (!out) throw io_error("cannot open '" + compute_output + "'");
            out << doc.dump(2) << "\n";
        }
        return 0;
    }

    if (sweep->parsed()) {
        if (!(sweep_to > sweep_from)) {
            throw std::invalid_argument("--to must exceed --from");
        }
        if (!sweep_linear && !(sweep_from > 0.0)) {
            throw std::invalid_argument("logarithmic sweeps need --from > 0");
        }
        Params base = sweep_params.resolve(sweep_preset);
        std::map<std::string, std::optional<double> Params::*> fields = {
            {"m", &Params::particle_mass}, {"M", &Params::gas_particle_mass},
            {"sigma", &Params::cross_section}, {"n", &Params::number_density},
            {"T", &Params::temperature}, {"lambda", &Params::lambda},
            {"b", &Params::friction}, {"D", &Params::diffusion},
            {"t", &Params::time}, {"alpha", &Params::alpha},
            {"theta", &Params::theta}};
        const auto field = fields.find(sweep_param);
        if (field == fields.end()) {
            throw std::invalid_argument("unknown sweep parameter '" + sweep_param + "'");
        }
        CurveTable table;
        table.add_meta("command", "sweep");
        table.add_meta("library_version", version_string);
        table.add_meta("quantity", sweep_quantity);
        table.add_meta("param", sweep_param);
        table.add_meta("from", format_value(sweep_from));
        table.add_meta("to", format_value(sweep_to));
        table.add_meta("points", std::to_string(sweep_points));
        table.add_meta("grid", sweep_linear ? "linear" : "logarithmic");
        if (!sweep_preset.empty()) table.add_meta("preset", sweep_preset);
        for (int i = 0; i < sweep_points; ++i) {
            const double fraction =
                sweep_points == 1 ? 0.0
                                  : static_cast<double>(i) / (sweep_points - 1);
            const double value =
                sweep_linear
                    ? sweep_from + (sweep_to - sweep_from) * fraction
                    : sweep_from * std::pow(sweep_to / sweep_from, fraction);
            Params params = base;
            params.*(field->second) = value;
            const QuantityResult result =
                evaluate_quantity(sweep_quantity, params, sweep_form, sweep_law);
            if (table.columns.empty()) {
                table.columns.push_back({sweep_param, "1"});
                for (const auto& [name, _] : result.values) {
                    table.columns.push_back({name, result.unit});
                }
                table.add_meta("formula", result.formula);
            }
            std::vector<double> row = {value};
            for (const auto& [_, v] : result.values) row.push_back(v);
            table.rows.push_back(std::move(row));
        }
        SvgStyle style;
        style.log_x = !sweep_linear;
        style.title = sweep_quantity + " vs " + sweep_param;
        sweep_out.emit(table, style);
        return 0;
    }

    if (simulate->parsed()) {
        SimSystem system = SimSystem::reduced();
        std::string units = "reduced";
        if (!sim_preset.empty()) {
            const Preset preset = load_preset(sim_preset);
            const double lam = preset.mean_free_path;
            if (!(lam > 0.0)) {
                throw std::invalid_argument("preset lacks a mean free path");
            }
            double T = preset.has_temperature() ? preset.temperature : 0.0;
            if (!sim_T_flag.empty()) T = parse_quantity(sim_T_flag, "K", "--T");
            system.particle_mass = preset.particle_mass;
            system.mean_free_path = lam;
            system.friction = constants::hbar / (lam * lam);
            system.thermal_energy = constants::k_boltzmann * T;
            system.hbar = constants::hbar;
            units = "SI";
        }
        const double tau = system.relaxation_time();

        SimConfig config;
        config.n_trajectories = n_traj;
        config.seed = seed;
        config.threads = threads;
        config.points_per_decade = points_per_decade;

        EnsembleStats stats;
        std::ostringstream report;
        if (scheme_name == "langevin") {
            config.scheme = Scheme::underdamped;
            config.time_step = sim_dt > 0.0 ? sim_dt : tau / 40.0;
            config.t_end = sim_t_end > 0.0 ? sim_t_end : 50.0 * tau;
            stats = simulate_langevin(config, system);
            const double window = std::min(10.0 * tau, 0.5 * config.t_end);
            const double slope_target =
                2.0 * system.thermal_energy / system.friction;
            const double v2_target = system.thermal_energy / system.particle_mass;
            try {
                const LinearFit fit = fit_dispersion_slope(stats, window);
                report << "late-time d(sigma_x^2)/dt = " << format_value(fit.slope)
                       << " +- " << format_value(fit.slope_se)
                       << " (Einstein target 2 kB T/b = "
                       << format_value(slope_target) << ")\n";
            } catch (const std::exception& e) {
                report << "slope fit skipped: " << e.what() << "\n";
            }
            report << "sigma_v^2 (late window) = "
                   << format_value(mean_sigma_v2(stats, window))
                   << " (equipartition target kB T/m = " << format_value(v2_target)
                   << ")\n";
            if (system.thermal_energy > 0.0) {
                try {
                    const VirialReport virial = virial_check(stats, system, window);
                    report << "virial max |b d(sigma_x^2)/dt - 2 m sigma_v^2| / "
                              "(2 m sigma_v^2) = "
                           << format_value(virial.max_relative_discrepancy)
                           << " over " << virial.points_used << " points\n";
                } catch (const std::exception& e) {
                    report << "virial check skipped: " << e.what() << "\n";
                }
            }
        } else if (scheme_name == "quantum-bath") {
            config.scheme = Scheme::overdamped;
            config.temperature_mode = constant_mode ? TemperatureMode::constant
                                                    : TemperatureMode::effective;
            config.time_step = sim_dt > 0.0 ? sim_dt : tau / 20.0;
            config.t_start = sim_t_start >= 0.0 ? sim_t_start
                                                : (constant_mode ? 0.0 : tau);
            config.t_end = sim_t_end > 0.0 ? sim_t_end : 100.0 * tau;
            stats = simulate_quantum_bath(config, system);
            try {
                if (constant_mode) {
                    const LinearFit fit =
                        fit_dispersion_slope(stats, config.t_end / 5.0);
                    report << "d(sigma_x^2)/dt = " << format_value(fit.slope)
                           << " +- " << format_value(fit.slope_se)
                           << " (Einstein target 2 kB T/b = "
                           << format_value(2.0 * system.thermal_energy /
                                           system.friction)
                           << ")\n";
                } else {
                    const LinearFit fit =
                        fit_log_coefficient(stats, 2.0 * tau, config.t_end);
                    const double target = system.hbar / (2.0 * system.friction);
                    report << "ln-t coefficient = " << format_value(fit.slope)
                           << " +- " << format_value(fit.slope_se)
                           << " (target hbar/2b = " << format_value(target)
                           << ")\n";
                }
            } catch (const std::exception& e) {
                report << "fit skipped: " << e.what() << "\n";
            }
        } else {
            config.scheme = Scheme::collisional;
            const double v_thermal =
                std::sqrt(system.thermal_energy / system.particle_mass);
            if (!(v_thermal > 0.0)) {
                throw std::invalid_argument("collisional runs need T > 0");
            }
            const double t_col = system.mean_free_path / v_thermal;
            config.t_end = sim_t_end > 0.0 ? sim_t_end : 50.0 * t_col;
            stats = simulate_collisional(config, system);
            const double target = system.mean_free_path * v_thermal;
            try {
                const LinearFit fit =
                    fit_dispersion_slope(stats, config.t_end / 5.0);
                report << "empirical D = " << format_value(fit.slope / 2.0)
                       << " +- " << format_value(fit.slope_se / 2.0)
                       << " (gas-kinetic target lambda sqrt(kB T/m) = "
                       << format_value(target) << ")\n";
            } catch (const std::exception& e) {
                report << "fit skipped: " << e.what() << "\n";
            }
        }

        CurveTable table = ensemble_table(stats);
        add_run_metadata(
            table,
            {{"command", "simulate"},
             {"scheme", scheme_name},
             {"units", units},
             {"dt", format_value(config.time_step)},
             {"t_start", format_value(config.t_start)},
             {"t_end", format_value(config.t_end)},
             {"points_per_decade", std::to_string(points_per_decade)},
             {"temperature_mode",
              config.temperature_mode == TemperatureMode::effective ? "effective"
                                                                    : "constant"},
             {"m", format_value(system.particle_mass)},
             {"b", format_value(system.friction)},
             {"kB_T", format_value(system.thermal_energy)},
             {"lambda", format_value(system.mean_free_path)},
             {"hbar", format_value(system.hbar)}});
        SvgStyle style;
        sim_out.emit(table, style);
        std::cout << report.str();
        return 0;
    }

    if (preset_list->parsed()) {
        for (const auto& name : list_presets()) {
            const Preset preset = load_preset(name);
            std::cout << name << ": m = " << format_value(preset.particle_mass)
                      << " kg";
            if (preset.has_mean_free_path()) {
                std::cout << ", lambda = " << format_value(preset.mean_free_path)
                          << " m";
            }
            if (preset.has_temperature()) {
                std::cout << ", T = " << format_value(preset.temperature) << " K";
            }
            std::cout << "\n";
            if (!preset.description.empty()) {
                std::cout << "    " << preset.description << "\n";
            }
        }
        std::cout << "search path:";
        for (const auto& dir : preset_search_dirs()) std::cout << " " << dir;
        std::cout << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qfriction::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qfriction::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
