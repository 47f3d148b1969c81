// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/rng.hpp"
#include "hfce/scene.hpp"
#include "hfce/system_config.hpp"

#include <Eigen/Dense>
#include <complex>
#include <limits>

namespace hfce
{

enum class CombinerMode
{
    UniformReal,      // U(-1, 1) / sqrt(N)
    UnitModulusPhase, // exp(j phi) / sqrt(N), phi ~ U[0, 2 pi)
};

// Stacked analog combiner W = [W_1; ...; W_P], each block N_RF x N.
struct CombiningMatrix
{
    Eigen::MatrixXcd matrix;
    int n_rf_chains = 0;
    int n_pilot_slots = 0;
    CombinerMode mode = CombinerMode::UniformReal;

    auto block(int slot) const { return matrix.middleRows(slot * n_rf_chains, n_rf_chains); }
};

CombiningMatrix generate_combiner(const SystemConfig& config, CombinerMode mode, Rng& rng);

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

struct MeasurementSet
{
    Eigen::MatrixXcd observations; // (P N_RF) x M
    double noise_variance = 0.0;   // per-antenna, pre-combining
    double snr_db = kNoiseless;
    std::complex<double> pilot{1.0, 0.0};
};

// sigma^2 = (mean_m ||h_m||^2 / N) 10^(-snr_db / 10).
double noise_variance_for(const Eigen::MatrixXcd& channel, double snr_db);

// y_m = W h_m + [W_1 n_{m,1}; ...; W_P n_{m,P}], n ~ CN(0, sigma^2 I_N). snr_db = +inf disables noise.
MeasurementSet observe(const Eigen::MatrixXcd& channel, const CombiningMatrix& combiner,
                       double snr_db, Rng& rng);
MeasurementSet observe(const HybridChannel& channel, const CombiningMatrix& combiner,
                       double snr_db, Rng& rng);

} // namespace hfce
