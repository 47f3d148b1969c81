// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/dataset.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hfce
{

inline constexpr const char* kMethodOmp = "omp";
inline constexpr const char* kMethodDenoised = "omp+denoiser";
inline constexpr const char* kCsvHeader =
    "snr_db,n_rf,n_pilots,dictionary,method,nmse_db_mean,nmse_db_stderr";

struct EvalRow
{
    double snr_db = 0.0;
    int n_rf = 0;
    int n_pilots = 0;
    std::string dictionary;
    std::string method;
    double nmse_db_mean = 0.0;
    double nmse_db_stderr = 0.0;
    int n_samples = 0; // not serialised
};

struct SampleError
{
    std::string id;
    std::string message;
};

struct EvalResult
{
    std::vector<EvalRow> rows;
    std::vector<SampleError> errors;
};

// Mean and standard error of the mean; stderr is 0 for fewer than two values.
std::pair<double, double> mean_and_stderr(const std::vector<double>& values);

// Antenna-domain NMSE of U * H_hat^P against H per record, grouped by operating point.
// With denoised_dir, <id>.hfct is scored as the omp+denoiser method; missing or malformed
// files are collected in errors and skipped.
EvalResult evaluate_manifest(const Manifest& manifest,
                             const std::optional<std::filesystem::path>& denoised_dir);

void write_csv(std::ostream& out, const std::vector<EvalRow>& rows);
std::vector<EvalRow> parse_csv(std::istream& in);

struct SeriesFile
{
    std::filesystem::path path;
    std::string method;
    std::string dictionary;
    int n_rf = 0;
    int n_pilots = 0;
    std::size_t n_points = 0;
};

// One whitespace-separated (snr_db, nmse_db_mean, nmse_db_stderr) file per
// (dictionary, method, N_RF, Q) series plus an index.json grouping them into N_RF and Q sweeps.
std::vector<SeriesFile> write_report(const std::vector<EvalRow>& rows,
                                     const std::filesystem::path& out_dir);

} // namespace hfce
