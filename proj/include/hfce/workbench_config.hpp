// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/measurement.hpp"
#include "hfce/omp.hpp"
#include "hfce/polar_dictionary.hpp"
#include "hfce/scene.hpp"
#include "hfce/system_config.hpp"

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace hfce
{

enum class DictionaryKind
{
    Polar,
    Angular,
};

std::string to_string(DictionaryKind kind);
DictionaryKind parse_dictionary_kind(const std::string& text);

struct EstimatorSettings
{
    std::optional<int> fixed_sparsity; // unset: T = L_f + L_n of the generating scene
    CoefficientUpdate update = CoefficientUpdate::LeastSquares;
    AtomSelection selection = AtomSelection::Normalized;
    CombinerMode combiner = CombinerMode::UniformReal;
};

struct WorkbenchConfig
{
    SystemConfig system;
    SceneParams scene;
    PolarDictionarySettings dictionary;
    EstimatorSettings estimator;
};

// One N_RF x Q operating point of a sweep.
struct GridCell
{
    int n_rf = 0;
    int n_pilots = 0;

    bool operator==(const GridCell&) const = default;
};

struct SweepSpec
{
    std::vector<double> snr_grid_db{-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10};
    std::vector<int> n_rf_grid{8, 12, 16};
    std::vector<int> pilot_grid{8, 16, 32};
    int fixed_n_pilots = 4; // Q used while sweeping N_RF
    int fixed_n_rf = 2;     // N_RF used while sweeping Q
    int n_trials = 200;
    DictionaryKind dictionary = DictionaryKind::Polar;

    // Union of the N_RF sweep at fixed Q and the Q sweep at fixed N_RF, duplicates removed,
    // in first-appearance order.
    std::vector<GridCell> cells() const;
    // Grids nonempty, n_trials >= 1, and P N_RF <= N for every cell.
    void validate(const SystemConfig& system) const;
};

// JSON config loading. Parse failures are reported as ConfigError with line/column.
// Relative absorption_csv paths resolve against base_dir; origin prefixes error messages.
WorkbenchConfig parse_workbench_config(const std::string& text,
                                       const std::filesystem::path& base_dir = {},
                                       const std::string& origin = "<config>");
WorkbenchConfig load_workbench_config(const std::filesystem::path& path);
SweepSpec parse_sweep_spec(const std::string& text, const std::string& origin = "<sweep>");
SweepSpec load_sweep_spec(const std::filesystem::path& path);

nlohmann::json to_json(const WorkbenchConfig& config);
nlohmann::json to_json(const SweepSpec& sweep);

} // namespace hfce
