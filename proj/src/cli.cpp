#include "spinsim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinsim/montecarlo.hpp"
#include "spinsim/report.hpp"
#include "spinsim/verify.hpp"

namespace spinsim::cli {

UnitVector3 parse_direction(const std::string& text, const std::string& flag) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument("trailing characters");
            parts.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + text + "' is not three comma-separated numbers");
        }
    }
    if (parts.size() != 3 || text.back() == ',') {
        throw UsageError(flag + ": '" + text + "' is not three comma-separated numbers");
    }
    try {
        return UnitVector3::normalized(parts[0], parts[1], parts[2]);
    } catch (const std::invalid_argument&) {
        throw UsageError(flag + ": direction has norm below 1e-6");
    }
}

std::pair<UnitVector3, UnitVector3> resolve_directions(const std::optional<std::string>& a,
                                                       const std::optional<std::string>& b,
                                                       const std::optional<double>& theta) {
    if (theta && (a || b)) throw UsageError("--theta: cannot be combined with --a/--b");
    if (theta) {
        if (!std::isfinite(*theta)) throw UsageError("--theta: angle must be finite");
        return {UnitVector3::z_axis(), UnitVector3::from_polar_xz(*theta)};
    }
    if (a.has_value() != b.has_value()) throw UsageError(a ? "--b: required when --a is given" : "--a: required when --b is given");
    if (a) return {parse_direction(*a, "--a"), parse_direction(*b, "--b")};
    return {UnitVector3::z_axis(), UnitVector3::z_axis()};
}

namespace {

TwoSpin spin_flag(const std::string& text) {
    try {
        return parse_spin(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--spin: ") + e.what());
    }
}

TwoSpin protocol_spin_flag(const std::string& text) {
    const TwoSpin s = spin_flag(text);
    try {
        require_protocol_eligible(s);
    } catch (const std::domain_error& e) {
        throw UsageError(std::string("--spin: ") + e.what());
    }
    return s;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("--out: cannot open '" + path + "' for writing");
    file << text;
}

struct DirectionFlags {
    std::optional<std::string> a;
    std::optional<std::string> b;
    std::optional<double> theta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--a", a, "Alice's direction x,y,z (normalised on input)");
        cmd->add_option("--b", b, "Bob's direction x,y,z (normalised on input)");
        cmd->add_option("--theta", theta, "Angle in radians; sets a = z, b = (sin t, 0, cos t)");
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classical n-cbit simulation of spin-s singlet correlations, with a quantum oracle"};
    app.name("spinsim");
    app.require_subcommand(1);

    std::string spin;
    std::string format = "json";
    std::string out_path;
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 1;
    int points = 19;
    std::vector<std::string> verify_spins;
    DirectionFlags dirs;

    auto* oracle = app.add_subcommand("oracle", "Exact quantum correlation and joint distribution");
    oracle->add_option("--spin", spin, "Spin, e.g. 1/2, 3/2, 1")->required();
    dirs.attach(oracle);
    oracle->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    oracle->add_option("--out", out_path, "Output path (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "Run the classical protocol and report statistics");
    simulate->add_option("--spin", spin, "Protocol spin: 1/2, 3/2, 7/2, 15/2, ...")->required();
    dirs.attach(simulate);
    simulate->add_option("--trials", trials, "Number of rounds")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    simulate->add_option("--out", out_path, "Output path (default stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Correlation against theta on [0, pi] with a linear fit");
    sweep_cmd->add_option("--spin", spin, "Protocol spin")->required();
    sweep_cmd->add_option("--trials", trials, "Rounds per point (default 100000)")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--points", points, "Number of theta values")->check(CLI::Range(2, 100000));
    sweep_cmd->add_option("--seed", seed, "Master seed");
    sweep_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
    sweep_cmd->add_option("--out", out_path, "Output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite and print a pass/fail table");
    verify->add_option("--spin", verify_spins, "Spins to check (repeatable); default 1/2 3/2 7/2 plus oracle 1, 15/2");
    verify->add_option("--trials", trials, "Rounds per statistical check")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Master seed");
    verify->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "spinsim: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (oracle->parsed()) {
            const TwoSpin s = spin_flag(spin);
            const auto [a, b] = resolve_directions(dirs.a, dirs.b, dirs.theta);
            const OracleResult result = run_oracle(s, a, b);
            if (format == "csv") {
                std::ostringstream os;
                write_csv(os, result);
                emit(os.str(), out_path, out);
            } else {
                emit(dump(to_json(result)), out_path, out);
            }
            return kSuccess;
        }
        if (simulate->parsed()) {
            EstimatorConfig config;
            config.two_s = protocol_spin_flag(spin);
            std::tie(config.a, config.b) = resolve_directions(dirs.a, dirs.b, dirs.theta);
            config.trials = trials;
            config.master_seed = seed;
            config.workers = workers;
            const SimulationReport report = estimate(config);
            if (format == "csv") {
                std::ostringstream os;
                write_csv(os, report);
                emit(os.str(), out_path, out);
            } else {
                emit(dump(to_json(report)), out_path, out);
            }
            return kSuccess;
        }
        if (sweep_cmd->parsed()) {
            const TwoSpin s = protocol_spin_flag(spin);
            if (sweep_cmd->count("--trials") == 0) trials = 100'000;
            if (sweep_cmd->count("--format") == 0) format = "csv";
            const SweepResult result = sweep(s, trials, points, seed, workers);
            if (format == "csv") {
                std::ostringstream os;
                write_csv(os, result);
                emit(os.str(), out_path, out);
            } else {
                emit(dump(to_json(result)), out_path, out);
            }
            return kSuccess;
        }
        if (verify->parsed()) {
            VerifyOptions options = VerifyOptions::defaults();
            if (!verify_spins.empty()) {
                std::vector<TwoSpin> spins;
                for (const auto& text : verify_spins) spins.push_back(spin_flag(text));
                options = VerifyOptions::for_spins(spins);
            }
            options.trials = trials;
            options.seed = seed;
            options.workers = workers;
            const bool ok = print_results(out, run_verification(options));
            return ok ? kSuccess : kVerificationFailure;
        }
    } catch (const UsageError& e) {
        err << "spinsim: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace spinsim::cli
