// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

namespace hfce
{

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

// Array and OFDM numerology. Wavelength, aperture and Rayleigh distance are always
// derived from the stored frequencies and never cached.
struct SystemConfig
{
    int n_antennas = 64;
    int n_rf_chains = 8;
    int n_pilot_slots = 8;
    int n_subcarriers = 16;
    double carrier_freq_hz = 100e9;
    double bandwidth_hz = 60e6;
    std::optional<double> element_spacing_m; // unset: half the carrier wavelength
    std::uint64_t rng_seed = 1;

    double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
    double wavelength_at(double freq_hz) const { return kSpeedOfLight / freq_hz; }
    double spacing_m() const { return element_spacing_m.value_or(0.5 * wavelength_m()); }

    // D = N d, which is N lambda / 2 at the default spacing.
    double aperture_m() const { return n_antennas * spacing_m(); }
    double rayleigh_distance_m() const
    {
        const double d = aperture_m();
        return 2.0 * d * d / wavelength_m();
    }

    // Uniform grid centred on the carrier: f_m = f_c + (m - (M-1)/2) B / M.
    double subcarrier_freq_hz(int m) const;

    int n_measurements() const { return n_pilot_slots * n_rf_chains; }

    // Throws InvalidArgument on any violated field constraint.
    void validate() const;
};

} // namespace hfce
