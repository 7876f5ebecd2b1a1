#pragma once

// Command-line surface. `run` performs a whole invocation in-process and
// returns the payload instead of printing it, so the binary and the tests
// share one code path.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "apharm/bohr.hpp"
#include "apharm/characters.hpp"
#include "apharm/error.hpp"
#include "apharm/group.hpp"
#include "apharm/json_io.hpp"
#include "apharm/peterweyl.hpp"
#include "apharm/trigpoly.hpp"

namespace apharm {

enum class ExitCode : int { ok = 0, usage = 1, validation = 2, computation = 3 };

struct CommandResult {
    enum class Status { ok, error };

    Status status = Status::ok;
    Json payload;
    std::vector<std::string> diagnostics;
    int exit_code = 0;
};

inline constexpr std::int64_t kDefaultQuadratureSteps = 2'000'000;

namespace cli_detail {

inline std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("APHARM_SEED");
    if (!raw || !*raw) return std::nullopt;
    try {
        return std::stoull(raw);
    } catch (const std::exception&) {
        throw Error("InvalidSeed", ErrorCategory::usage, std::string("APHARM_SEED is not an integer: ") + raw);
    }
}

inline CommandResult failure(ErrorCategory category, std::string message) {
    CommandResult r;
    r.status = CommandResult::Status::error;
    r.diagnostics.push_back(std::move(message));
    switch (category) {
    case ErrorCategory::usage: r.exit_code = static_cast<int>(ExitCode::usage); break;
    case ErrorCategory::validation: r.exit_code = static_cast<int>(ExitCode::validation); break;
    case ErrorCategory::computation: r.exit_code = static_cast<int>(ExitCode::computation); break;
    }
    return r;
}

// Sample table {"start", "step", "values": [{re, im}, ...]}, linearly
// interpolated; or any trigonometric polynomial, used as a black box.
inline Sampler sampler_from_json(const Json& j) {
    if (j.contains("terms") || j.contains("basis")) return sampler_of(poly_from_json(j));
    const double start = detail::field<double>(j, "start");
    const double step = detail::field<double>(j, "step");
    if (!(step > 0.0)) throw invalid_input("sample table step must be positive");
    if (!j.contains("values") || !j.at("values").is_array()) throw invalid_input("sample table needs 'values'");
    std::vector<Complex> values;
    for (const auto& v : j.at("values")) values.push_back(complex_from_json(v));
    if (values.size() < 2) throw invalid_input("sample table needs at least two values");
    return [start, step, values = std::move(values)](double x) -> Complex {
        const double pos = (x - start) / step;
        const double last = static_cast<double>(values.size() - 1);
        if (pos < -1e-9 || pos > last + 1e-9)
            throw invalid_input("sample table does not cover x = " + std::to_string(x));
        const double clamped = std::clamp(pos, 0.0, last);
        const auto i = std::min(static_cast<std::size_t>(clamped), values.size() - 2);
        const double t = clamped - static_cast<double>(i);
        return (1.0 - t) * values[i] + t * values[i + 1];
    };
}

inline Json parse_inline_or_file(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        try {
            return Json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw invalid_input(std::string("malformed JSON argument: ") + e.what());
        }
    }
    return read_json_file(text);
}

inline Json gibson_table(const std::vector<std::string>& as, double epsilon) {
    Json rows = Json::array();
    const BasisPtr basis = make_basis({{"one", 1.0}});
    for (const auto& text : as) {
        const Rational a = parse_rational(text);
        if (a == 0) throw invalid_input("demo gibson needs a != 0 (a = 0 is constant; no period scale)");
        const TrigPolynomial f = TrigPolynomial::character(basis, Frequency::along(1, 0, a));
        const double period = 2.0 * std::numbers::pi / std::abs(to_double(a));
        const double length = inclusion_length_estimate(f, epsilon, 3.0 * period, period / 20000.0);
        rows.push_back(Json::array({format_rational(a), epsilon, length}));
    }
    return Json{{"columns", {"a", "epsilon", "inclusion_length"}}, {"rows", rows}};
}

} // namespace cli_detail

// argv[0] is the program name.
inline CommandResult run(const std::vector<std::string>& argv) {
    if (argv.empty()) return cli_detail::failure(ErrorCategory::usage, "empty argument vector");

    CLI::App app{"Almost periodic functions and harmonic analysis on finite groups", "apharm"};
    app.require_subcommand(1);

    std::string poly_file, samples_file, grid_file, group_file, function_file, freq_arg, side = "left";
    double x = 0.0, N = 1e4, epsilon = 0.1, threshold = 0.5, tau_max = 200.0, step = 1e-3, horizon = 100.0;
    std::int64_t steps = kDefaultQuadratureSteps;
    int trials = 50;
    std::optional<std::uint64_t> seed_flag;
    std::string builtin_name;
    std::vector<std::string> gibson_as{"1", "1/2", "1/10", "1/50"};
    bool numeric = false;

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a trigonometric polynomial");
    eval_cmd->add_option("--poly", poly_file)->required();
    eval_cmd->add_option("--x", x)->required();

    auto* mean_cmd = app.add_subcommand("mean", "Bohr mean (exact, or numeric quadrature)");
    mean_cmd->add_option("--poly", poly_file)->required();
    mean_cmd->add_flag("--numeric", numeric);
    mean_cmd->add_option("--N", N);
    mean_cmd->add_option("--steps", steps);

    auto* coeff_cmd = app.add_subcommand("coeff", "Fourier-Bohr coefficient at an exact frequency");
    coeff_cmd->add_option("--poly", poly_file)->required();
    coeff_cmd->add_option("--freq", freq_arg, "JSON object {symbol: \"p/q\"} or a file holding one")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Scan a frequency grid for Fourier-Bohr coefficients");
    spectrum_cmd->add_option("--samples", samples_file)->required();
    spectrum_cmd->add_option("--grid", grid_file)->required();
    spectrum_cmd->add_option("--N", N)->required();
    spectrum_cmd->add_option("--threshold", threshold)->required();
    spectrum_cmd->add_option("--steps", steps);

    auto* period_cmd = app.add_subcommand("almost-period", "Certified epsilon-almost-period search");
    period_cmd->add_option("--poly", poly_file)->required();
    period_cmd->add_option("--epsilon", epsilon)->required();
    period_cmd->add_option("--tau-max", tau_max)->required();
    period_cmd->add_option("--step", step)->required();

    auto* inclusion_cmd = app.add_subcommand("inclusion-length", "Empirical inclusion length estimate");
    inclusion_cmd->add_option("--poly", poly_file)->required();
    inclusion_cmd->add_option("--epsilon", epsilon)->required();
    inclusion_cmd->add_option("--horizon", horizon)->required();
    inclusion_cmd->add_option("--step", step)->required();

    auto* net_cmd = app.add_subcommand("net", "Certified epsilon-net of translates");
    net_cmd->add_option("--poly", poly_file)->required();
    net_cmd->add_option("--epsilon", epsilon)->required();

    auto* rank_cmd = app.add_subcommand("rank", "Rank over Q of the frequency module");
    rank_cmd->add_option("--poly", poly_file)->required();

    auto* approx_cmd = app.add_subcommand("bohr-approx", "Bohr approximation with certified tail");
    approx_cmd->add_option("--poly", poly_file)->required();
    approx_cmd->add_option("--epsilon", epsilon)->required();

    auto* group_cmd = app.add_subcommand("group", "Finite group harmonic analysis");
    group_cmd->require_subcommand(1);
    auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", seed_flag); };
    auto* chars_cmd = group_cmd->add_subcommand("characters", "Character table");
    chars_cmd->add_option("--group", group_file)->required();
    add_seed(chars_cmd);
    auto* dual_cmd = group_cmd->add_subcommand("dual", "Dual group of an abelian group");
    dual_cmd->add_option("--group", group_file)->required();
    add_seed(dual_cmd);
    auto* decompose_cmd = group_cmd->add_subcommand("decompose", "Isotypic (Peter-Weyl) decomposition");
    decompose_cmd->add_option("--group", group_file)->required();
    decompose_cmd->add_option("--function", function_file)->required();
    add_seed(decompose_cmd);
    auto* plancherel_cmd = group_cmd->add_subcommand("plancherel", "Plancherel identity for a central function");
    plancherel_cmd->add_option("--group", group_file)->required();
    plancherel_cmd->add_option("--function", function_file)->required();
    add_seed(plancherel_cmd);
    auto* minimal_cmd = group_cmd->add_subcommand("minimal", "Minimal almost invariance check");
    minimal_cmd->add_option("--group", group_file)->required();
    minimal_cmd->add_option("--function", function_file)->required();
    minimal_cmd->add_option("--trials", trials)->required();
    minimal_cmd->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    add_seed(minimal_cmd);
    auto* builtin_cmd = group_cmd->add_subcommand("builtin", "Emit a built-in group (Z<n>, D<n>, S<n>, Q8, Z2xZ2)");
    builtin_cmd->add_option("--name", builtin_name)->required();

    auto* demo_cmd = app.add_subcommand("demo", "Demonstrations");
    demo_cmd->require_subcommand(1);
    auto* gibson_cmd = demo_cmd->add_subcommand("gibson", "Inclusion length of exp(i a x) as a -> 0");
    gibson_cmd->add_option("--a", gibson_as, "rational frequency (repeatable)");
    gibson_cmd->add_option("--epsilon", epsilon);

    std::vector<std::string> reversed(argv.rbegin(), argv.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        CommandResult r;
        r.diagnostics.push_back(app.help());
        return r;
    } catch (const CLI::CallForAllHelp&) {
        CommandResult r;
        r.diagnostics.push_back(app.help("", CLI::AppFormatMode::All));
        return r;
    } catch (const CLI::ParseError& e) {
        return cli_detail::failure(ErrorCategory::usage, std::string("usage error: ") + e.what());
    }

    CommandResult result;
    try {
        std::optional<std::uint64_t> env_seed = cli_detail::seed_from_env();
        const std::uint64_t seed = seed_flag.value_or(env_seed.value_or(kDefaultSeed));
        auto load_group = [&] { return group_from_json(read_json_file(group_file)); };
        auto load_poly = [&] { return poly_from_json(read_json_file(poly_file)); };

        if (*eval_cmd) {
            result.payload = complex_to_json(eval(load_poly(), x));
        } else if (*mean_cmd) {
            const TrigPolynomial f = load_poly();
            result.payload = complex_to_json(numeric ? bohr_mean_numeric(sampler_of(f), N, steps) : bohr_mean_exact(f));
        } else if (*coeff_cmd) {
            const TrigPolynomial f = load_poly();
            const Frequency lambda = frequency_from_json(cli_detail::parse_inline_or_file(freq_arg), f.basis());
            result.payload = complex_to_json(fourier_bohr_coefficient(f, lambda));
        } else if (*spectrum_cmd) {
            const Sampler sampler = cli_detail::sampler_from_json(read_json_file(samples_file));
            const Json grid_json = read_json_file(grid_file);
            std::vector<double> grid;
            try {
                grid = grid_json.get<std::vector<double>>();
            } catch (const nlohmann::json::exception&) {
                throw invalid_input("grid must be a JSON array of numbers");
            }
            Json lines = Json::array();
            for (const auto& line : spectrum_scan(sampler, grid, N, steps, threshold))
                lines.push_back({{"frequency", line.frequency}, {"re", line.coeff.real()}, {"im", line.coeff.imag()}});
            result.payload = Json{{"lines", lines}};
        } else if (*period_cmd) {
            result.payload = to_json(find_almost_period(load_poly(), epsilon, tau_max, step));
        } else if (*inclusion_cmd) {
            const double l = inclusion_length_estimate(load_poly(), epsilon, horizon, step);
            result.payload = Json{{"epsilon", epsilon}, {"inclusion_length", l}};
        } else if (*net_cmd) {
            result.payload = to_json(epsilon_net_translates(load_poly(), epsilon));
        } else if (*rank_cmd) {
            result.payload = Json{{"rank", frequency_module_rank(load_poly())}};
        } else if (*approx_cmd) {
            result.payload = poly_to_json(bohr_approximate(load_poly(), epsilon));
        } else if (*group_cmd) {
            if (*builtin_cmd) {
                result.payload = group_to_json(*builtin_group(builtin_name));
            } else if (*chars_cmd) {
                result.payload = to_json(compute_characters(load_group(), seed));
            } else if (*dual_cmd) {
                const DualGroup d = dual_group(load_group(), seed);
                result.payload = to_json(d);
                const double dist = verify_dual_discreteness(d);
                result.payload["min_distance"] = std::isfinite(dist) ? Json(dist) : Json(nullptr);
            } else {
                const GroupPtr g = load_group();
                const GroupFunction f = function_from_json(read_json_file(function_file), g);
                if (*decompose_cmd) {
                    result.payload = to_json(decompose(f, compute_characters(g, seed)));
                } else if (*plancherel_cmd) {
                    const PlancherelSides s = plancherel_check(f, compute_characters(g, seed));
                    result.payload = Json{{"lhs", s.lhs}, {"rhs", s.rhs}};
                } else if (*minimal_cmd) {
                    const Side which = side == "right" ? Side::right : Side::left;
                    result.payload = Json{{"minimal", minimality_check(f, which, trials, seed)},
                                          {"rank", translate_span_rank(f, which)},
                                          {"side", side},
                                          {"trials", trials},
                                          {"seed", seed}};
                }
            }
        } else if (*demo_cmd) {
            result.payload = cli_detail::gibson_table(gibson_as, epsilon);
        }
    } catch (const Error& e) {
        return cli_detail::failure(e.category(), e.name() + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        return cli_detail::failure(ErrorCategory::validation, std::string("InvalidInput: ") + e.what());
    }
    return result;
}

} // namespace apharm
