// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/tensor_io.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace hfce
{

struct DatasetSample
{
    std::string id;
    Eigen::MatrixXcd noisy_polar; // OMP estimate H_hat^P, S x M
    Eigen::MatrixXcd clean_polar; // ground-truth H^P, S x M
    Eigen::MatrixXcd channel;     // antenna-domain H, N x M (optional, empty to skip)
    double snr_db = 0.0;
    int n_rf = 0;
    int n_pilot_slots = 0;
    std::uint64_t seed = 0;
};

// Record as stored in the manifest. Paths are relative to the manifest directory.
struct ManifestRecord
{
    std::string id;
    std::string noisy_path;
    std::string clean_path;
    std::string channel_path; // empty when not exported
    double snr_db = 0.0;
    int n_rf = 0;
    int n_pilot_slots = 0;
    std::uint64_t seed = 0;
    std::string split; // "train" or "validation"
};

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr double kTrainFraction = 0.8;

// Number of training records for a dataset of n samples (the rest validate).
std::size_t train_count(std::size_t n_samples);

// Writes <id>.noisy.hfct / <id>.clean.hfct (and <id>.channel.hfct) per sample plus
// manifest.json. config_snapshot and dictionary_meta are embedded verbatim.
std::filesystem::path export_dataset(const std::vector<DatasetSample>& samples,
                                     const std::filesystem::path& out_dir,
                                     const nlohmann::json& config_snapshot = nlohmann::json::object(),
                                     const nlohmann::json& dictionary_meta = nlohmann::json::object());

// Incremental form used by the sweep runner: tensors are written per sample as results
// arrive, the manifest is assembled once at the end.
ManifestRecord write_sample_files(const DatasetSample& sample, const std::filesystem::path& out_dir);
std::filesystem::path write_manifest(std::vector<ManifestRecord> records,
                                     const std::filesystem::path& out_dir,
                                     const nlohmann::json& config_snapshot,
                                     const nlohmann::json& dictionary_meta);

struct Manifest
{
    std::filesystem::path directory;
    nlohmann::json config;
    nlohmann::json dictionary;
    std::vector<ManifestRecord> records;

    std::filesystem::path resolve(const std::string& relative) const { return directory / relative; }
};

// Parses and structurally checks a manifest: unique ids, known split tags. With
// check_files, every referenced tensor must exist and parse.
Manifest load_manifest(const std::filesystem::path& path, bool check_files = true);

} // namespace hfce
