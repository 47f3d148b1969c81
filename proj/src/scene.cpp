// SPDX-License-Identifier: Apache-2.0
#include "hfce/scene.hpp"

#include "hfce/errors.hpp"
#include "hfce/steering.hpp"

#include <cmath>

namespace hfce
{

void SceneParams::validate() const
{
    if (l_far < 0 || l_near < 0 || l_far + l_near < 1)
        throw InvalidArgument("scene needs at least one path");
    if (!(los_range_min_m > 0.0) || !(los_range_max_m >= los_range_min_m))
        throw InvalidArgument("LOS range interval must be positive and ordered");
    if (!(near_range_fraction > 0.0 && near_range_fraction < 1.0))
        throw InvalidArgument("near_range_fraction must lie in (0, 1)");
    material.validate();
}

namespace
{

void check_counts(const SceneRealization& scene)
{
    int far = 0;
    int near = 0;
    for (const auto& p : scene.paths)
        (p.kind == PathKind::FarLos ? far : near) += 1;
    if (far != scene.l_far || near != scene.l_near)
        throw InvalidArgument("scene path counts do not match path kinds");
    if (far + near < 1)
        throw InvalidArgument("scene has no paths");
}

double path_length(const PathComponent& path)
{
    if (path.kind == PathKind::NearNlos && path.scatter_leg1_m > 0.0 && path.scatter_leg2_m > 0.0)
        return path.scatter_leg1_m + path.scatter_leg2_m;
    return path.distance_m;
}

} // namespace

void SceneRealization::validate(const SystemConfig& config) const
{
    check_counts(*this);
    const double rayleigh = config.rayleigh_distance_m();
    for (const auto& p : paths)
    {
        if (!(std::abs(p.gain) > 0.0) || !std::isfinite(std::abs(p.gain)))
            throw ValidationError("path gain must be finite and nonzero");
        if (!(p.distance_m > 0.0))
            throw ValidationError("path distance must be positive");
        if (p.kind == PathKind::NearNlos && !(p.distance_m < rayleigh))
            throw ValidationError("near-field path beyond the Rayleigh distance");
        if (p.kind == PathKind::FarLos && !(p.distance_m >= rayleigh))
            throw ValidationError("far-field path inside the Rayleigh distance");
    }
}

SceneRealization generate_scene(const SystemConfig& config, const SceneParams& params, Rng& rng)
{
    config.validate();
    params.validate();
    const double rayleigh = config.rayleigh_distance_m();
    if (params.los_range_min_m < rayleigh)
        throw InvalidArgument("LOS range interval starts inside the Rayleigh distance (" +
                              std::to_string(rayleigh) + " m)");

    const double fc = config.carrier_freq_hz;
    SceneRealization scene;
    scene.l_far = params.l_far;
    scene.l_near = params.l_near;
    scene.environment = {params.material, params.absorption};

    auto draw_range = [&rng](double lo, double hi) {
        return hi > lo ? std::uniform_real_distribution<double>(lo, hi)(rng) : lo;
    };

    double user_range = 0.0;
    double user_angle = 0.0;
    for (int i = 0; i < params.l_far; ++i)
    {
        PathComponent p;
        p.kind = PathKind::FarLos;
        p.angle_rad = uniform_open(rng, 0.0, kPi);
        p.distance_m = draw_range(params.los_range_min_m, params.los_range_max_m);
        p.delay_s = p.distance_m / kSpeedOfLight;
        p.gain = los_gain(fc, p.distance_m, params.absorption, p.delay_s);
        if (i == 0)
        {
            user_range = p.distance_m;
            user_angle = p.angle_rad;
        }
        scene.paths.push_back(p);
    }
    if (params.l_far == 0)
    {
        user_angle = uniform_open(rng, 0.0, kPi);
        user_range = draw_range(params.los_range_min_m, params.los_range_max_m);
    }

    const double near_hi = params.near_range_fraction * rayleigh;
    const double near_lo = near_hi / 10.0;
    const double ux = user_range * std::cos(user_angle);
    const double uy = user_range * std::sin(user_angle);
    for (int i = 0; i < params.l_near; ++i)
    {
        PathComponent p;
        p.kind = PathKind::NearNlos;
        p.angle_rad = uniform_open(rng, 0.0, kPi);
        p.distance_m = draw_range(near_lo, near_hi);
        const double sx = p.distance_m * std::cos(p.angle_rad);
        const double sy = p.distance_m * std::sin(p.angle_rad);
        p.scatter_leg1_m = std::hypot(ux - sx, uy - sy);
        p.scatter_leg2_m = p.distance_m;
        p.delay_s = (p.scatter_leg1_m + p.scatter_leg2_m) / kSpeedOfLight;
        p.gain = nlos_gain(fc, p.scatter_leg1_m, p.scatter_leg2_m, params.absorption,
                           params.material, p.delay_s);
        scene.paths.push_back(p);
    }
    return scene;
}

std::complex<double> gain_frequency_ratio(const PathComponent& path, const SceneEnvironment& env,
                                          double f_ref_hz, double f_hz)
{
    if (f_hz == f_ref_hz)
        return {1.0, 0.0};
    const double r = path_length(path);
    double magnitude = f_ref_hz / f_hz;
    if (r > 0.0)
        magnitude *= std::exp(-0.5 * (env.absorption.at(f_hz) - env.absorption.at(f_ref_hz)) * r);
    if (path.kind == PathKind::NearNlos)
    {
        const double c = std::cos(env.material.incidence_angle_rad);
        const double sigma = env.material.roughness_std_m;
        magnitude *= std::exp(-8.0 * kPi * kPi * sigma * sigma * c * c *
                              (f_hz * f_hz - f_ref_hz * f_ref_hz) / (kSpeedOfLight * kSpeedOfLight));
    }
    return std::polar(magnitude, -2.0 * kPi * (f_hz - f_ref_hz) * path.delay_s);
}

HybridChannel assemble_channel(const SceneRealization& scene, const SystemConfig& config)
{
    config.validate();
    check_counts(scene);

    const int n = config.n_antennas;
    const int m_count = config.n_subcarriers;
    const double d = config.spacing_m();
    const double fc = config.carrier_freq_hz;
    const double scale = std::sqrt(static_cast<double>(n) / scene.n_paths());

    HybridChannel channel{Eigen::MatrixXcd::Zero(n, m_count), scene, config};
    for (int m = 0; m < m_count; ++m)
    {
        const double f = config.subcarrier_freq_hz(m);
        const double lambda = config.wavelength_at(f);
        auto column = channel.coeffs.col(m);
        for (const auto& p : scene.paths)
        {
            const auto alpha = p.gain * gain_frequency_ratio(p, scene.environment, fc, f);
            if (p.kind == PathKind::FarLos)
                column += alpha * far_steering(p.angle_rad, n, d / lambda);
            else
                column += alpha * near_steering(p.angle_rad, p.distance_m, n, d, lambda);
        }
        column *= scale;
    }

    if (!channel.coeffs.allFinite())
        throw ValidationError("assembled channel has non-finite entries");
    for (int m = 0; m < m_count; ++m)
        if (!(channel.coeffs.col(m).norm() > 0.0))
            throw ValidationError("assembled channel has a zero subcarrier column");
    return channel;
}

} // namespace hfce
