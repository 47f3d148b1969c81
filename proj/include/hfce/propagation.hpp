// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <filesystem>
#include <utility>
#include <vector>

namespace hfce
{

// Molecular absorption coefficient k(f) in 1/m, tabulated. Linear interpolation between
// entries, clamped to the end values outside the table. An empty table means k == 0.
class AbsorptionTable
{
public:
    struct Entry
    {
        double frequency_hz;
        double k_per_m;
    };

    AbsorptionTable() = default;
    explicit AbsorptionTable(std::vector<Entry> entries);

    static AbsorptionTable constant(double k_per_m);
    // Two columns: frequency_hz,k_per_m. A non-numeric first line is treated as a header.
    static AbsorptionTable from_csv(const std::filesystem::path& path);

    double at(double freq_hz) const;
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

struct MaterialParams
{
    double refractive_index = 2.24;      // eta, must exceed 1
    double roughness_std_m = 5e-5;       // sigma
    double incidence_angle_rad = 0.7854; // psi in [0, pi/2)

    void validate() const;
};

// Fresnel term gamma = -exp(-2 cos(psi) / sqrt(eta^2 - 1)).
double fresnel_coefficient(const MaterialParams& material);
// Roughness term rho = exp(-8 pi^2 f^2 sigma^2 cos^2(psi) / c^2).
double roughness_factor(double freq_hz, const MaterialParams& material);

// Free-space spreading with absorption and delay phase:
// (c / (4 pi f r)) exp(-k(f) r / 2) exp(-j 2 pi f tau).
std::complex<double> los_gain(double freq_hz, double range_m, const AbsorptionTable& absorption,
                              double delay_s);

// Single-bounce reflected path over legs r1 + r2, scaled by gamma * rho.
std::complex<double> nlos_gain(double freq_hz, double leg1_m, double leg2_m,
                               const AbsorptionTable& absorption, const MaterialParams& material,
                               double delay_s);

} // namespace hfce
