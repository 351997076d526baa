#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fell/classification.hpp"
#include "fell/fell_bundle.hpp"
#include "fell/qtorus.hpp"

namespace fell {

using json = nlohmann::json;

// Parsed CLI configuration: the validated document plus the common
// parameters (which command-line flags may override).
struct JobConfig {
    json doc;
    std::int64_t modulus = 0;  // 0 = default (|G|)
    int samples = 32;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int window = 5;
    bool oracle = false;
};

JobConfig parse_config(const std::string& text);

struct JobResult {
    int exit_code = 0;  // 0 pass/true, 1 mathematically negative, 2 input error
    json report;
};

// Dispatch a subcommand. InputError/CapacityError propagate to the
// caller (the CLI maps them to exit code 2).
JobResult run_job(const std::string& command, const JobConfig& config);

// Deterministic rendering: sorted keys, 2-space indent, rationals as
// "p/q" strings, floats rounded to 12 significant digits.
std::string emit_report(const json& report);

// --- serialization helpers, shared with the python bindings ----------
GroupPtr parse_group(const json& spec);
AlgebraPtr parse_algebra(const json& spec);
PicardHom parse_psi(const json& spec, const GroupPtr& group, const AlgebraPtr& algebra);
Cochain parse_cochain(const json& spec, const GroupPtr& group, int k);
TwistedAction parse_twisted_action(const json& spec, const GroupPtr& group,
                                   const AlgebraPtr& algebra, double tol);
std::vector<std::vector<Angle>> parse_theta(const json& spec);

json cochain_to_json(const Cochain& c);
json psi_to_json(const PicardHom& psi);
json factor_system_to_json(const FactorSystem& fs);
json axiom_report_to_json(const AxiomReport& rep);
json algebra_element_to_json(const AlgebraElement& a);
json bimodule_element_to_json(const BimoduleElement& x);
json twisted_action_to_json(const TwistedAction& ta);

} // namespace fell
