// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/dataset.hpp"
#include "hfce/omp.hpp"
#include "hfce/polar_dictionary.hpp"
#include "hfce/workbench_config.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <json.hpp>

namespace hfce
{

PolarDictionary build_dictionary(const WorkbenchConfig& config, DictionaryKind kind);

// Exact polar-domain representation used as the denoiser target: a T-atom OMP fit of the
// noiseless channel with A = U, plus the minimum-norm correction U^+ (H - U x) so that
// U * result == H up to round-off.
class PolarProjector
{
public:
    explicit PolarProjector(const PolarDictionary& dict);
    Eigen::MatrixXcd represent(const Eigen::MatrixXcd& channel, int sparsity) const;

private:
    const PolarDictionary* dict_;
    Eigen::MatrixXcd pseudo_inverse_; // S x N
};

struct TrialResult
{
    Eigen::MatrixXcd channel;     // H, N x M
    Eigen::MatrixXcd noisy_polar; // H_hat^P
    Eigen::MatrixXcd estimate;    // H_hat = U H_hat^P
    int sparsity = 0;
    double nmse_db = 0.0;
    bool rank_deficient = false;
};

struct TrialKey
{
    GridCell cell;
    int snr_index = 0;
    double snr_db = 0.0;
    int trial = 0;
};

// One Monte-Carlo draw. The scene depends only on (seed, trial), so every grid cell and SNR
// sees the same user drops; the combiner on (seed, trial, cell); the noise on all of it.
TrialResult run_trial(const WorkbenchConfig& config, const PolarDictionary& dict,
                      const TrialKey& key, std::uint64_t seed);

std::string sample_id(const TrialKey& key);

nlohmann::json dictionary_metadata(const PolarDictionary& dict, DictionaryKind kind,
                                   const PolarDictionarySettings& settings);

struct SynthOptions
{
    std::uint64_t seed = 1;
    int jobs = 1;
    bool export_dictionary = true;
};

// Runs every (cell, snr, trial) of the sweep and exports the dataset. Returns the manifest path.
std::filesystem::path synthesize_dataset(const WorkbenchConfig& config, const SweepSpec& sweep,
                                         const std::filesystem::path& out_dir,
                                         const SynthOptions& options);

// Applies fn(i) for i in [0, count) on `jobs` threads; the first exception is rethrown.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

} // namespace hfce
