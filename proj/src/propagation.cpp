// SPDX-License-Identifier: Apache-2.0
#include "hfce/propagation.hpp"

#include "hfce/errors.hpp"
#include "hfce/system_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hfce
{

AbsorptionTable::AbsorptionTable(std::vector<Entry> entries) : entries_(std::move(entries))
{
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        const auto& e = entries_[i];
        if (!std::isfinite(e.frequency_hz) || !std::isfinite(e.k_per_m) || e.k_per_m < 0.0)
            throw InvalidArgument("absorption entry " + std::to_string(i) + " is not a finite, non-negative value");
        if (i > 0 && !(e.frequency_hz > entries_[i - 1].frequency_hz))
            throw InvalidArgument("absorption frequencies must be strictly increasing");
    }
}

AbsorptionTable AbsorptionTable::constant(double k_per_m)
{
    return AbsorptionTable({{1.0, k_per_m}});
}

AbsorptionTable AbsorptionTable::from_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open absorption table " + path.string());

    std::vector<Entry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        Entry e{};
        if (!(fields >> e.frequency_hz >> e.k_per_m))
        {
            if (line_no == 1 && entries.empty())
                continue; // header
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected two numeric columns");
        }
        entries.push_back(e);
    }
    try
    {
        return AbsorptionTable(std::move(entries));
    }
    catch (const InvalidArgument& e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

double AbsorptionTable::at(double freq_hz) const
{
    if (entries_.empty())
        return 0.0;
    if (freq_hz <= entries_.front().frequency_hz)
        return entries_.front().k_per_m;
    if (freq_hz >= entries_.back().frequency_hz)
        return entries_.back().k_per_m;
    auto hi = std::upper_bound(entries_.begin(), entries_.end(), freq_hz,
                               [](double f, const Entry& e) { return f < e.frequency_hz; });
    auto lo = hi - 1;
    const double t = (freq_hz - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
    return lo->k_per_m + t * (hi->k_per_m - lo->k_per_m);
}

void MaterialParams::validate() const
{
    if (!(refractive_index > 1.0) || !std::isfinite(refractive_index))
        throw InvalidArgument("refractive index must exceed 1");
    if (!(roughness_std_m >= 0.0))
        throw InvalidArgument("roughness std must be non-negative");
    if (!(incidence_angle_rad >= 0.0 && incidence_angle_rad < kPi / 2))
        throw InvalidArgument("incidence angle must lie in [0, pi/2)");
}

double fresnel_coefficient(const MaterialParams& material)
{
    material.validate();
    const double eta = material.refractive_index;
    return -std::exp(-2.0 * std::cos(material.incidence_angle_rad) / std::sqrt(eta * eta - 1.0));
}

double roughness_factor(double freq_hz, const MaterialParams& material)
{
    const double c = std::cos(material.incidence_angle_rad);
    const double sigma = material.roughness_std_m;
    return std::exp(-8.0 * kPi * kPi * freq_hz * freq_hz * sigma * sigma * c * c /
                    (kSpeedOfLight * kSpeedOfLight));
}

namespace
{

std::complex<double> spreading(double freq_hz, double range_m, const AbsorptionTable& absorption,
                               double delay_s)
{
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
        throw InvalidArgument("frequency must be positive");
    if (!(range_m > 0.0) || !std::isfinite(range_m))
        throw InvalidArgument("range must be positive");
    const double magnitude = kSpeedOfLight / (4.0 * kPi * freq_hz * range_m) *
                             std::exp(-0.5 * absorption.at(freq_hz) * range_m);
    return std::polar(magnitude, -2.0 * kPi * freq_hz * delay_s);
}

} // namespace

std::complex<double> los_gain(double freq_hz, double range_m, const AbsorptionTable& absorption,
                              double delay_s)
{
    return spreading(freq_hz, range_m, absorption, delay_s);
}

std::complex<double> nlos_gain(double freq_hz, double leg1_m, double leg2_m,
                               const AbsorptionTable& absorption, const MaterialParams& material,
                               double delay_s)
{
    if (!(leg1_m > 0.0) || !(leg2_m > 0.0))
        throw InvalidArgument("scatter legs must be positive");
    const double reflection = fresnel_coefficient(material) * roughness_factor(freq_hz, material);
    return spreading(freq_hz, leg1_m + leg2_m, absorption, delay_s) * reflection;
}

} // namespace hfce
