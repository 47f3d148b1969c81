// SPDX-License-Identifier: Apache-2.0
#include "hfce/steering.hpp"

#include "hfce/errors.hpp"
#include "hfce/system_config.hpp"

#include <cmath>
#include <complex>

namespace hfce
{

namespace
{

void check_angle(double angle_rad)
{
    if (!std::isfinite(angle_rad))
        throw InvalidArgument("steering angle must be finite");
    if (!(angle_rad > 0.0 && angle_rad < kPi))
        throw InvalidArgument("steering angle must lie strictly inside (0, pi)");
}

} // namespace

Eigen::VectorXcd far_steering(double angle_rad, int n_antennas, double spacing_over_lambda)
{
    check_angle(angle_rad);
    if (n_antennas < 1)
        throw InvalidArgument("n_antennas must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    const double step = -2.0 * kPi * spacing_over_lambda * std::cos(angle_rad);
    Eigen::VectorXcd a(n_antennas);
    for (int z = 0; z < n_antennas; ++z)
        a[z] = std::polar(scale, step * z);
    return a;
}

double element_distance(double r_m, double angle_rad, int element_index, int n_antennas,
                        double spacing_m)
{
    if (!(r_m > 0.0) || !std::isfinite(r_m))
        throw InvalidArgument("distance must be positive");
    if (!std::isfinite(angle_rad))
        throw InvalidArgument("angle must be finite");
    if (element_index < 1 || element_index > n_antennas)
        throw InvalidArgument("element index out of range");
    const double delta = 0.5 * (2.0 * element_index - n_antennas - 1);
    const double offset = delta * spacing_m;
    const double arg = r_m * r_m + offset * offset - 2.0 * r_m * offset * std::cos(angle_rad);
    if (!(arg > 0.0))
        throw DegenerateGeometry("source coincides with antenna element " +
                                 std::to_string(element_index));
    return std::sqrt(arg);
}

Eigen::VectorXcd near_steering(double angle_rad, double r_m, int n_antennas, double spacing_m,
                               double lambda_m)
{
    check_angle(angle_rad);
    if (n_antennas < 1)
        throw InvalidArgument("n_antennas must be positive");
    if (!(lambda_m > 0.0))
        throw InvalidArgument("wavelength must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
    const double k = 2.0 * kPi / lambda_m;
    const double cos_theta = std::cos(angle_rad);
    const double delta1 = 0.5 * (1.0 - n_antennas);
    const double reference = element_distance(r_m, angle_rad, 1, n_antennas, spacing_m);
    Eigen::VectorXcd b(n_antennas);
    for (int z = 1; z <= n_antennas; ++z)
    {
        const double rz = element_distance(r_m, angle_rad, z, n_antennas, spacing_m);
        // r_z - r_1 as (r_z^2 - r_1^2) / (r_z + r_1); avoids cancellation when r >> N d.
        const double delta = 0.5 * (2.0 * z - n_antennas - 1);
        const double diff_sq = (delta * delta - delta1 * delta1) * spacing_m * spacing_m -
                               2.0 * r_m * spacing_m * cos_theta * (delta - delta1);
        b[z - 1] = std::polar(scale, k * diff_sq / (rz + reference));
    }
    return b;
}

} // namespace hfce
