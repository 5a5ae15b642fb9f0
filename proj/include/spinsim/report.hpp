#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "spinsim/montecarlo.hpp"
#include "spinsim/oracle.hpp"

namespace spinsim {

nlohmann::ordered_json to_json(const OutcomeDistribution& dist);
nlohmann::ordered_json to_json(const EstimatorConfig& config);
nlohmann::ordered_json to_json(const SimulationReport& report);
nlohmann::ordered_json to_json(const SweepResult& result);

SimulationReport report_from_json(const nlohmann::ordered_json& j);

/// Oracle query result: both correlation routes and the Born-rule table.
struct OracleResult {
    TwoSpin two_s{1};
    UnitVector3 a;
    UnitVector3 b;
    double corr_closed_form = 0.0;
    double corr_matrix = 0.0;
    double corr_distribution = 0.0;
    OutcomeDistribution joint_quantum{TwoSpin{1}};
};

OracleResult run_oracle(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b);

nlohmann::ordered_json to_json(const OracleResult& result);

/// Pretty-printed JSON followed by a newline.
std::string dump(const nlohmann::ordered_json& j);

void write_csv(std::ostream& out, const OracleResult& result);
void write_csv(std::ostream& out, const SimulationReport& report);
/// Columns theta,cos_theta,corr_quantum,corr_estimate,corr_stderr,tvd,chi2_alpha,chi2_beta
/// followed by '#' comment lines holding the fit.
void write_csv(std::ostream& out, const SweepResult& result);

}  // namespace spinsim
