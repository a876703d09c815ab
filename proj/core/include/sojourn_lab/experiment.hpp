#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "group_action.hpp"
#include "oracle.hpp"
#include "stats.hpp"

namespace sojourn_lab {

enum class ExperimentKind
{
    planet,
    bridge,
    matrix,
    validate_nu,
    oracle,
    negative_control
};

std::string to_string(ExperimentKind kind);
//! Throws ConfigError for unknown names.
ExperimentKind parse_experiment(std::string const& name);

/*!
 * Everything that determines an experiment's output.
 *
 * Defaults reproduce the random-planet setup: d = 3, 20 summits,
 * K(x) = 1 - (|x|/2)^{1/10}, anchor at the north pole, 1e5 replications,
 * 100 antithetic evaluation points and 50 histogram bins.
 */
struct ExperimentConfig
{
    ExperimentKind experiment = ExperimentKind::planet;
    std::uint64_t seed = 1;
    std::size_t replications = 100'000;
    int dim = 3;
    int rows = 4;
    int cols = 5;
    std::size_t grid_size = 1000;  //!< bridge grid points m
    std::size_t summits = 20;
    double kernel_exp = 0.1;
    double bump = 3.0;
    std::size_t eval_points = 100;
    bool antithetic = true;
    std::size_t bins = 50;
    double alpha = kDefaultAlpha;
    std::string group = "rotation";  //!< validate-nu: rotation, circle, or shifts
    std::vector<std::vector<double>> base;  //!< oracle base matrix; empty means random
    std::filesystem::path out_dir;  //!< empty: compute only
    unsigned workers = 0;           //!< 0: hardware concurrency; never affects output
};

//! Throws ConfigError describing the first invalid field.
void validate(ExperimentConfig const& config);

//! Config fields that influence results, in a stable order (no paths or worker count).
nlohmann::ordered_json config_to_json(ExperimentConfig const& config);

struct ExperimentResult
{
    ExperimentConfig config;
    std::vector<double> samples;  //!< by replication index; empty for validate-nu
    std::optional<UniformityReport> uniformity;
    std::vector<PushforwardCheck> pushforward;
    std::optional<OrbitLaw> orbit_law;
    std::size_t tied_evaluations = 0;
    bool pass = false;
    nlohmann::ordered_json report;
};

/*!
 * Run an experiment and, when config.out_dir is set, write its files.
 *
 * Replication r draws everything from replication_stream(seed, r), and
 * samples are stored by index, so output does not depend on the worker
 * count. Files: samples.csv, report.json, histogram.svg (validate-nu
 * writes report.json only).
 */
ExperimentResult run_experiment(ExperimentConfig const& config);

//! Standard battery of test sets used by validate-nu for a group.
std::vector<TestSet> pushforward_battery(GroupSpec const& group);

//! Parse "1,2;3,4" into rows of numbers. Throws ConfigError.
std::vector<std::vector<double>> parse_matrix(std::string const& text);

}  // namespace sojourn_lab
