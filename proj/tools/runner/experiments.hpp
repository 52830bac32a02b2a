#pragma once

#include "config.hpp"
#include "output.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace qrabi::cli {

struct ExperimentInfo {
    Experiment id;
    const char* description;
    const char* figure;
};

const std::vector<ExperimentInfo>& experiment_catalog();
std::string list_experiments();

struct TruncationDiagnostics {
    int points = 0;
    int inadequate_points = 0;
    int n_max_used = 0;         // at the hardest point
    int n_max_required = 0;     // at the hardest point
    double g1 = 0.0;
    double g2 = 0.0;
    double tail_mass = 0.0;     // ground-state weight on the top 5 Fock levels at the hardest point

    bool adequate() const { return inadequate_points == 0; }
    nlohmann::json to_json() const;
};

struct RunResult {
    std::vector<Table> tables;
    nlohmann::json summary = nlohmann::json::object();
    TruncationDiagnostics truncation;
};

RunResult run_experiment(const Config& cfg);

// Sum of |psi|^2 over Fock levels n > n_max - top.
double fock_tail_mass(const StateVector& psi, int top = 5);

}  // namespace qrabi::cli
