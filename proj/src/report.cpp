#include "spinsim/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace spinsim {

using nlohmann::ordered_json;

namespace {

ordered_json vec3(const UnitVector3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

UnitVector3 vec3_from(const ordered_json& j) {
    return UnitVector3::from_unit(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

// NaN serialises as null.
double number_from(const ordered_json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

OutcomeDistribution distribution_from(const ordered_json& j) {
    OutcomeDistribution dist(TwoSpin(j.at("two_s").get<int>()));
    const auto& rows = j.at("probs");
    if (static_cast<int>(rows.size()) != dist.dim()) throw std::invalid_argument("joint table has wrong row count");
    for (int i = 0; i < dist.dim(); ++i) {
        if (static_cast<int>(rows[i].size()) != dist.dim()) {
            throw std::invalid_argument("joint table has wrong column count");
        }
        for (int jj = 0; jj < dist.dim(); ++jj) dist.at(i, jj) = rows[i][jj].get<double>();
    }
    return dist;
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

ordered_json to_json(const OutcomeDistribution& dist) {
    ordered_json outcomes = ordered_json::array();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < dist.dim(); ++i) {
        outcomes.push_back(dist.two_s().doubled_outcome(i));
        ordered_json row = ordered_json::array();
        for (int j = 0; j < dist.dim(); ++j) row.push_back(dist.at(i, j));
        rows.push_back(std::move(row));
    }
    return {{"two_s", dist.two_s().two_s()}, {"outcomes_doubled", outcomes}, {"probs", rows}};
}

ordered_json to_json(const EstimatorConfig& config) {
    return {{"spin", config.two_s.to_string()}, {"two_s", config.two_s.two_s()},
            {"a", vec3(config.a)},              {"b", vec3(config.b)},
            {"trials", config.trials},          {"master_seed", config.master_seed},
            {"workers", config.workers}};
}

ordered_json to_json(const SimulationReport& r) {
    return {{"config", to_json(r.config)},
            {"corr_estimate", r.corr_estimate},
            {"corr_stderr", r.corr_stderr},
            {"corr_quantum", r.corr_quantum},
            {"mean_alpha", r.mean_alpha},
            {"mean_beta", r.mean_beta},
            {"marginal_alpha", r.marginal_alpha},
            {"marginal_beta", r.marginal_beta},
            {"joint_empirical", to_json(r.joint_empirical)},
            {"joint_quantum", to_json(r.joint_quantum)},
            {"tvd", r.tvd},
            {"chi2_alpha", number(r.chi2_alpha)},
            {"chi2_beta", number(r.chi2_beta)},
            {"bits_per_round", r.bits_per_round},
            {"total_bits", r.total_bits}};
}

ordered_json to_json(const SweepResult& result) {
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        points.push_back({{"theta", result.thetas[i]}, {"report", to_json(result.reports[i])}});
    }
    return {{"spin", result.two_s.to_string()},
            {"two_s", result.two_s.two_s()},
            {"fit", {{"slope", result.fit.slope}, {"intercept", result.fit.intercept}}},
            {"points", points}};
}

SimulationReport report_from_json(const ordered_json& j) {
    SimulationReport r;
    const auto& c = j.at("config");
    r.config.two_s = TwoSpin(c.at("two_s").get<int>());
    r.config.a = vec3_from(c.at("a"));
    r.config.b = vec3_from(c.at("b"));
    r.config.trials = c.at("trials").get<std::int64_t>();
    r.config.master_seed = c.at("master_seed").get<std::uint64_t>();
    r.config.workers = c.at("workers").get<int>();
    r.corr_estimate = j.at("corr_estimate").get<double>();
    r.corr_stderr = j.at("corr_stderr").get<double>();
    r.corr_quantum = j.at("corr_quantum").get<double>();
    r.mean_alpha = j.at("mean_alpha").get<double>();
    r.mean_beta = j.at("mean_beta").get<double>();
    r.marginal_alpha = j.at("marginal_alpha").get<std::vector<double>>();
    r.marginal_beta = j.at("marginal_beta").get<std::vector<double>>();
    r.joint_empirical = distribution_from(j.at("joint_empirical"));
    r.joint_quantum = distribution_from(j.at("joint_quantum"));
    r.tvd = j.at("tvd").get<double>();
    r.chi2_alpha = number_from(j.at("chi2_alpha"));
    r.chi2_beta = number_from(j.at("chi2_beta"));
    r.bits_per_round = j.at("bits_per_round").get<int>();
    r.total_bits = j.at("total_bits").get<std::int64_t>();
    return r;
}

OracleResult run_oracle(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b) {
    OracleResult out;
    out.two_s = two_s;
    out.a = a;
    out.b = b;
    out.corr_closed_form = quantum_correlation_closed_form(two_s, a, b);
    out.corr_matrix = quantum_correlation_matrix(two_s, a, b);
    out.joint_quantum = quantum_joint_distribution(two_s, a, b);
    out.corr_distribution = out.joint_quantum.correlation();
    return out;
}

ordered_json to_json(const OracleResult& r) {
    return {{"spin", r.two_s.to_string()},
            {"two_s", r.two_s.two_s()},
            {"protocol_eligible", r.two_s.protocol_eligible()},
            {"a", vec3(r.a)},
            {"b", vec3(r.b)},
            {"corr_closed_form", r.corr_closed_form},
            {"corr_matrix", r.corr_matrix},
            {"corr_distribution", r.corr_distribution},
            {"joint_quantum", to_json(r.joint_quantum)}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_csv(std::ostream& out, const OracleResult& r) {
    out << "# spin=" << r.two_s.to_string() << "\n";
    out << "# corr_closed_form=" << fmt(r.corr_closed_form) << "\n";
    out << "# corr_matrix=" << fmt(r.corr_matrix) << "\n";
    out << "# corr_distribution=" << fmt(r.corr_distribution) << "\n";
    out << "alpha_doubled,beta_doubled,prob\n";
    const auto& dist = r.joint_quantum;
    for (int i = 0; i < dist.dim(); ++i)
        for (int j = 0; j < dist.dim(); ++j)
            out << dist.two_s().doubled_outcome(i) << ',' << dist.two_s().doubled_outcome(j) << ','
                << fmt(dist.at(i, j)) << "\n";
}

void write_csv(std::ostream& out, const SimulationReport& r) {
    out << "field,value\n";
    out << "spin," << r.config.two_s.to_string() << "\n";
    out << "trials," << r.config.trials << "\n";
    out << "master_seed," << r.config.master_seed << "\n";
    out << "workers," << r.config.workers << "\n";
    out << "corr_estimate," << fmt(r.corr_estimate) << "\n";
    out << "corr_stderr," << fmt(r.corr_stderr) << "\n";
    out << "corr_quantum," << fmt(r.corr_quantum) << "\n";
    out << "mean_alpha," << fmt(r.mean_alpha) << "\n";
    out << "mean_beta," << fmt(r.mean_beta) << "\n";
    out << "tvd," << fmt(r.tvd) << "\n";
    out << "chi2_alpha," << fmt(r.chi2_alpha) << "\n";
    out << "chi2_beta," << fmt(r.chi2_beta) << "\n";
    out << "bits_per_round," << r.bits_per_round << "\n";
    out << "total_bits," << r.total_bits << "\n";
    const TwoSpin ts = r.config.two_s;
    for (int i = 0; i < ts.dim(); ++i) {
        out << "marginal_alpha[" << ts.doubled_outcome(i) << "]," << fmt(r.marginal_alpha[i]) << "\n";
    }
    for (int i = 0; i < ts.dim(); ++i) {
        out << "marginal_beta[" << ts.doubled_outcome(i) << "]," << fmt(r.marginal_beta[i]) << "\n";
    }
    for (int i = 0; i < ts.dim(); ++i)
        for (int j = 0; j < ts.dim(); ++j)
            out << "joint_empirical[" << ts.doubled_outcome(i) << "][" << ts.doubled_outcome(j) << "],"
                << fmt(r.joint_empirical.at(i, j)) << "\n";
    for (int i = 0; i < ts.dim(); ++i)
        for (int j = 0; j < ts.dim(); ++j)
            out << "joint_quantum[" << ts.doubled_outcome(i) << "][" << ts.doubled_outcome(j) << "],"
                << fmt(r.joint_quantum.at(i, j)) << "\n";
}

void write_csv(std::ostream& out, const SweepResult& result) {
    out << "theta,cos_theta,corr_quantum,corr_estimate,corr_stderr,tvd,chi2_alpha,chi2_beta\n";
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const auto& r = result.reports[i];
        out << fmt(result.thetas[i]) << ',' << fmt(std::cos(result.thetas[i])) << ',' << fmt(r.corr_quantum) << ','
            << fmt(r.corr_estimate) << ',' << fmt(r.corr_stderr) << ',' << fmt(r.tvd) << ',' << fmt(r.chi2_alpha)
            << ',' << fmt(r.chi2_beta) << "\n";
    }
    const double s = result.two_s.spin();
    out << "# spin=" << result.two_s.to_string() << "\n";
    out << "# fit_slope=" << fmt(result.fit.slope) << "\n";
    out << "# fit_intercept=" << fmt(result.fit.intercept) << "\n";
    out << "# expected_slope=" << fmt(-s * (s + 1.0) / 3.0) << "\n";
}

}  // namespace spinsim
