// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace hfce
{

// Far-field ULA response, first element as phase reference:
// a_z = exp(-j 2 pi (d/lambda) cos(theta) z) / sqrt(N), z = 0..N-1.
Eigen::VectorXcd far_steering(double angle_rad, int n_antennas, double spacing_over_lambda);

// Distance from a source at (r, theta) about the array centre to element z (1-based):
// sqrt(r^2 + Delta^2 d^2 - 2 r Delta d cos(theta)), Delta = (2z - N - 1) / 2.
double element_distance(double r_m, double angle_rad, int element_index, int n_antennas,
                        double spacing_m);

// Spherical-wavefront response. Entry z is exp(+j 2 pi (r^(z) - r^(1)) / lambda) / sqrt(N), the
// conjugate of the physical phase referenced to the first element, so that it tends to
// far_steering(theta, N, d / lambda) elementwise as r grows.
Eigen::VectorXcd near_steering(double angle_rad, double r_m, int n_antennas, double spacing_m,
                               double lambda_m);

} // namespace hfce
