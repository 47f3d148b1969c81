// SPDX-License-Identifier: Apache-2.0
#include "hfce/system_config.hpp"

#include "hfce/errors.hpp"

#include <cmath>
#include <string>

namespace hfce
{

double SystemConfig::subcarrier_freq_hz(int m) const
{
    if (m < 0 || m >= n_subcarriers)
        throw InvalidArgument("subcarrier index " + std::to_string(m) + " out of range");
    const double offset = m - 0.5 * (n_subcarriers - 1);
    return carrier_freq_hz + offset * bandwidth_hz / n_subcarriers;
}

void SystemConfig::validate() const
{
    if (n_antennas < 1)
        throw InvalidArgument("n_antennas must be positive");
    if (n_rf_chains < 1 || n_rf_chains > n_antennas)
        throw InvalidArgument("n_rf_chains must be in [1, n_antennas]");
    if (n_pilot_slots < 1)
        throw InvalidArgument("n_pilot_slots must be positive");
    if (n_subcarriers < 1)
        throw InvalidArgument("n_subcarriers must be positive");
    if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
        throw InvalidArgument("carrier_freq_hz must be positive");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw InvalidArgument("bandwidth_hz must be positive");
    if (bandwidth_hz >= 2.0 * carrier_freq_hz)
        throw InvalidArgument("bandwidth_hz would produce non-positive subcarrier frequencies");
    if (element_spacing_m && !(*element_spacing_m > 0.0 && std::isfinite(*element_spacing_m)))
        throw InvalidArgument("element_spacing_m must be positive");
}

} // namespace hfce
