// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/propagation.hpp"
#include "hfce/rng.hpp"
#include "hfce/system_config.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hfce
{

enum class PathKind
{
    FarLos,
    NearNlos,
};

struct PathComponent
{
    PathKind kind = PathKind::FarLos;
    std::complex<double> gain{1.0, 0.0}; // value at the carrier frequency
    double angle_rad = kPi / 2;
    double distance_m = 0.0; // LOS range for FarLos, scatterer-to-array range for NearNlos
    double delay_s = 0.0;
    double scatter_leg1_m = 0.0; // user -> scatterer
    double scatter_leg2_m = 0.0; // scatterer -> array
};

// Propagation environment shared by all paths of a drop; assembly needs it to move the
// carrier-frequency gains onto each subcarrier.
struct SceneEnvironment
{
    MaterialParams material;
    AbsorptionTable absorption;
};

struct SceneRealization
{
    std::vector<PathComponent> paths;
    int l_far = 0;
    int l_near = 0;
    SceneEnvironment environment;

    int n_paths() const { return l_far + l_near; }
    // Checks counts against the path kinds and the near/far split against D_R.
    void validate(const SystemConfig& config) const;
};

struct SceneParams
{
    int l_far = 1;
    int l_near = 3;
    double los_range_min_m = 110.0;
    double los_range_max_m = 160.0;
    double near_range_fraction = 0.5; // near ranges ~ U[f D_R / 10, f D_R]
    MaterialParams material;
    AbsorptionTable absorption;

    void validate() const;
};

// Stochastic stand-in for a ray-traced drop: one user position, far LOS components in the
// configured LOS interval, single-bounce scatterers inside the Rayleigh distance.
SceneRealization generate_scene(const SystemConfig& config, const SceneParams& params, Rng& rng);

// alpha(f) / alpha(f_ref) of the path's gain model.
std::complex<double> gain_frequency_ratio(const PathComponent& path, const SceneEnvironment& env,
                                          double f_ref_hz, double f_hz);

struct HybridChannel
{
    Eigen::MatrixXcd coeffs; // N x M, column m is h_m
    SceneRealization scene;
    SystemConfig config;
};

// h_m = sqrt(N / L) (sum_far alpha a(theta) + sum_near alpha b(theta, r)) at f_m.
HybridChannel assemble_channel(const SceneRealization& scene, const SystemConfig& config);

} // namespace hfce
