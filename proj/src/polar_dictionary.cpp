// SPDX-License-Identifier: Apache-2.0
#include "hfce/polar_dictionary.hpp"

#include "hfce/errors.hpp"
#include "hfce/steering.hpp"
#include "hfce/tensor_io.hpp"

#include <algorithm>
#include <cmath>

namespace hfce
{

PolarDictionary::PolarDictionary(Eigen::MatrixXcd matrix, std::vector<double> angle_grid,
                                 std::vector<std::vector<double>> rings, double beta)
    : matrix_(std::move(matrix)), angle_grid_(std::move(angle_grid)), rings_(std::move(rings)),
      beta_(beta)
{
    if (angle_grid_.size() != rings_.size())
        throw InvalidArgument("one ring list per angle is required");
    Eigen::Index col = 0;
    for (const auto& r : rings_)
    {
        if (r.empty() || r.front() != kFarFieldRing)
            throw InvalidArgument("every angle must start with the far-field sentinel ring");
        first_column_.push_back(col);
        col += static_cast<Eigen::Index>(r.size());
    }
    if (col != matrix_.cols())
        throw InvalidArgument("ring counts do not add up to the dictionary width");
}

std::vector<int> PolarDictionary::ring_counts() const
{
    std::vector<int> counts;
    counts.reserve(rings_.size());
    for (const auto& r : rings_)
        counts.push_back(static_cast<int>(r.size()));
    return counts;
}

DictionaryAtom PolarDictionary::atom(Eigen::Index column) const
{
    if (column < 0 || column >= matrix_.cols())
        throw InvalidArgument("dictionary column out of range");
    auto it = std::upper_bound(first_column_.begin(), first_column_.end(), column);
    const auto angle = static_cast<std::size_t>(std::distance(first_column_.begin(), it) - 1);
    return {static_cast<int>(angle), rings_[angle][static_cast<std::size_t>(column - first_column_[angle])]};
}

double PolarDictionary::mutual_coherence() const
{
    if (matrix_.cols() < 2)
        return 0.0;
    Eigen::MatrixXd gram = (matrix_.adjoint() * matrix_).cwiseAbs();
    gram.diagonal().setZero();
    return gram.maxCoeff();
}

std::vector<double> uniform_cosine_grid(int n_angles)
{
    if (n_angles < 1)
        throw InvalidArgument("n_angles must be positive");
    std::vector<double> grid(static_cast<std::size_t>(n_angles));
    for (int n = 0; n < n_angles; ++n)
        grid[static_cast<std::size_t>(n)] = std::acos(static_cast<double>(2 * n - n_angles + 1) / n_angles);
    return grid;
}

PolarDictionary build_polar_dictionary(const SystemConfig& config,
                                       const PolarDictionarySettings& settings)
{
    config.validate();
    if (!(settings.beta > 0.0))
        throw InvalidArgument("beta must be positive");
    if (!(settings.min_distance_m > 0.0))
        throw InvalidArgument("min_distance_m must be positive");
    if (settings.max_rings_per_angle < 0)
        throw InvalidArgument("max_rings_per_angle must be non-negative");

    const int n = config.n_antennas;
    const int n_angles = settings.n_angles > 0 ? settings.n_angles : n;
    const double lambda = config.wavelength_m();
    const double d = config.spacing_m();
    const double ring_scale = n * n * d * d / (2.0 * settings.beta * settings.beta * lambda);

    auto grid = uniform_cosine_grid(n_angles);
    std::vector<std::vector<double>> rings(grid.size());
    Eigen::Index n_columns = 0;
    for (std::size_t a = 0; a < grid.size(); ++a)
    {
        const double c = std::cos(grid[a]);
        const double radial = ring_scale * (1.0 - c * c);
        rings[a].push_back(kFarFieldRing);
        for (int s = 1; s <= settings.max_rings_per_angle; ++s)
        {
            const double r = radial / s;
            if (r < settings.min_distance_m)
                break;
            rings[a].push_back(r);
        }
        n_columns += static_cast<Eigen::Index>(rings[a].size());
    }

    Eigen::MatrixXcd matrix(n, n_columns);
    Eigen::Index col = 0;
    for (std::size_t a = 0; a < grid.size(); ++a)
    {
        for (double r : rings[a])
        {
            matrix.col(col++) = r == kFarFieldRing ? far_steering(grid[a], n, d / lambda)
                                                   : near_steering(grid[a], r, n, d, lambda);
        }
    }
    return PolarDictionary(std::move(matrix), std::move(grid), std::move(rings), settings.beta);
}

PolarDictionary build_polar_dictionary(const SystemConfig& config, int n_angles, double beta,
                                       double min_distance_m)
{
    PolarDictionarySettings settings;
    settings.n_angles = n_angles;
    settings.beta = beta;
    settings.min_distance_m = min_distance_m;
    return build_polar_dictionary(config, settings);
}

PolarDictionary build_angular_dictionary(const SystemConfig& config)
{
    PolarDictionarySettings settings;
    settings.n_angles = config.n_antennas;
    settings.max_rings_per_angle = 0;
    settings.min_distance_m = 1.0;
    return build_polar_dictionary(config, settings);
}

Eigen::MatrixXcd transform(const PolarDictionary& dict, const Eigen::MatrixXcd& coeffs)
{
    if (coeffs.rows() != dict.n_columns())
        throw InvalidArgument("coefficient rows (" + std::to_string(coeffs.rows()) +
                              ") do not match dictionary width (" +
                              std::to_string(dict.n_columns()) + ")");
    return dict.matrix() * coeffs;
}

void export_dictionary(const PolarDictionary& dict, const std::filesystem::path& path)
{
    write_tensor(path, to_tensor(dict.matrix()));
}

} // namespace hfce
