// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/system_config.hpp"

#include <Eigen/Dense>
#include <filesystem>
#include <limits>
#include <vector>

namespace hfce
{

inline constexpr double kFarFieldRing = std::numeric_limits<double>::infinity();

struct PolarDictionarySettings
{
    int n_angles = 0; // 0: one angle per antenna
    double beta = 1.2;
    double min_distance_m = 3.0;
    int max_rings_per_angle = 64; // near-field rings only; the far sentinel is always present
};

struct DictionaryAtom
{
    int angle_index;
    double distance_m; // kFarFieldRing for the far sentinel
};

// N x S matrix of unit-norm steering atoms. Columns are grouped by angle; within an angle the
// far-field sentinel comes first, followed by near-field rings with decreasing distance.
class PolarDictionary
{
public:
    PolarDictionary(Eigen::MatrixXcd matrix, std::vector<double> angle_grid,
                    std::vector<std::vector<double>> rings, double beta);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const std::vector<double>& angle_grid() const { return angle_grid_; }
    const std::vector<std::vector<double>>& rings() const { return rings_; }
    double beta() const { return beta_; }

    Eigen::Index n_rows() const { return matrix_.rows(); }
    Eigen::Index n_columns() const { return matrix_.cols(); }
    int n_far_columns() const { return static_cast<int>(angle_grid_.size()); }
    int n_near_columns() const { return static_cast<int>(matrix_.cols()) - n_far_columns(); }
    std::vector<int> ring_counts() const;
    DictionaryAtom atom(Eigen::Index column) const;

    // Largest off-diagonal |U^H U| entry.
    double mutual_coherence() const;

private:
    Eigen::MatrixXcd matrix_;
    std::vector<double> angle_grid_;
    std::vector<std::vector<double>> rings_;
    std::vector<Eigen::Index> first_column_;
    double beta_;
};

// Angles uniform in cos(theta) over (-1, 1): cos(theta_n) = (2n - n_angles + 1) / n_angles.
std::vector<double> uniform_cosine_grid(int n_angles);

// Rings r_s = N^2 d^2 sin^2(theta) / (2 beta^2 lambda s), s = 1, 2, ... while r_s >= min
// distance, capped at max_rings_per_angle. Built at the carrier frequency.
PolarDictionary build_polar_dictionary(const SystemConfig& config,
                                       const PolarDictionarySettings& settings);
PolarDictionary build_polar_dictionary(const SystemConfig& config, int n_angles, double beta,
                                       double min_distance_m);

// N far-field atoms on the uniform-cosine grid (orthonormal at d = lambda / 2).
PolarDictionary build_angular_dictionary(const SystemConfig& config);

// U * coeffs, the synthesis direction h = U h^P.
Eigen::MatrixXcd transform(const PolarDictionary& dict, const Eigen::MatrixXcd& coeffs);

void export_dictionary(const PolarDictionary& dict, const std::filesystem::path& path);

} // namespace hfce
