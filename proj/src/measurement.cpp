// SPDX-License-Identifier: Apache-2.0
#include "hfce/measurement.hpp"

#include "hfce/errors.hpp"

#include <cmath>

namespace hfce
{

CombiningMatrix generate_combiner(const SystemConfig& config, CombinerMode mode, Rng& rng)
{
    config.validate();
    const int n = config.n_antennas;
    const int rows = config.n_measurements();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    CombiningMatrix w;
    w.n_rf_chains = config.n_rf_chains;
    w.n_pilot_slots = config.n_pilot_slots;
    w.mode = mode;
    w.matrix.resize(rows, n);

    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    // Column-major fill order is part of the determinism contract.
    for (int c = 0; c < n; ++c)
    {
        for (int r = 0; r < rows; ++r)
        {
            w.matrix(r, c) = mode == CombinerMode::UniformReal
                                 ? std::complex<double>(scale * unit(rng), 0.0)
                                 : std::polar(scale, phase(rng));
        }
    }
    return w;
}

double noise_variance_for(const Eigen::MatrixXcd& channel, double snr_db)
{
    if (std::isinf(snr_db) && snr_db > 0)
        return 0.0;
    if (channel.size() == 0)
        throw InvalidArgument("empty channel");
    const double mean_power = channel.colwise().squaredNorm().mean();
    return mean_power / static_cast<double>(channel.rows()) * std::pow(10.0, -snr_db / 10.0);
}

MeasurementSet observe(const Eigen::MatrixXcd& channel, const CombiningMatrix& combiner,
                       double snr_db, Rng& rng)
{
    if (std::isnan(snr_db))
        throw InvalidArgument("snr_db is NaN");
    if (combiner.matrix.cols() != channel.rows())
        throw InvalidArgument("combiner width does not match antenna count");
    if (combiner.matrix.rows() != static_cast<Eigen::Index>(combiner.n_rf_chains) * combiner.n_pilot_slots)
        throw InvalidArgument("combiner block structure is inconsistent");

    MeasurementSet set;
    set.snr_db = snr_db;
    set.noise_variance = noise_variance_for(channel, snr_db);
    set.observations = combiner.matrix * channel;
    if (set.noise_variance == 0.0)
        return set;

    const Eigen::Index n = channel.rows();
    const double sd = std::sqrt(set.noise_variance / 2.0);
    std::normal_distribution<double> gauss(0.0, sd);
    Eigen::VectorXcd noise(n);
    for (Eigen::Index m = 0; m < channel.cols(); ++m)
    {
        for (int p = 0; p < combiner.n_pilot_slots; ++p)
        {
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double re = gauss(rng);
                noise[i] = {re, gauss(rng)};
            }
            set.observations.col(m).segment(static_cast<Eigen::Index>(p) * combiner.n_rf_chains,
                                            combiner.n_rf_chains) += combiner.block(p) * noise;
        }
    }
    return set;
}

MeasurementSet observe(const HybridChannel& channel, const CombiningMatrix& combiner,
                       double snr_db, Rng& rng)
{
    return observe(channel.coeffs, combiner, snr_db, rng);
}

} // namespace hfce
