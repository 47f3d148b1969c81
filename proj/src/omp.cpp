// SPDX-License-Identifier: Apache-2.0
#include "hfce/omp.hpp"

#include "hfce/errors.hpp"

#include <cmath>
#include <string>

namespace hfce
{

SparseEstimate omp_sensing(const Eigen::MatrixXcd& observations, const Eigen::MatrixXcd& sensing,
                           const Eigen::MatrixXcd& dictionary, const OmpOptions& options)
{
    const Eigen::Index n_meas = sensing.rows();
    const Eigen::Index n_atoms = sensing.cols();
    const int iterations = options.iterations;
    if (iterations < 1)
        throw InvalidArgument("OMP needs at least one iteration");
    if (iterations > n_meas)
        throw InvalidArgument("OMP iterations (" + std::to_string(iterations) +
                              ") exceed the measurement count (" + std::to_string(n_meas) + ")");
    if (iterations > n_atoms)
        throw InvalidArgument("OMP iterations exceed the dictionary width");
    if (observations.rows() != n_meas)
        throw InvalidArgument("observation rows do not match the sensing matrix");
    if (dictionary.cols() != n_atoms)
        throw InvalidArgument("dictionary width does not match the sensing matrix");

    const Eigen::VectorXd energy = sensing.colwise().squaredNorm().transpose();
    std::vector<bool> taken(static_cast<std::size_t>(n_atoms), false);

    SparseEstimate est;
    est.coeffs_polar = Eigen::MatrixXcd::Zero(n_atoms, observations.cols());
    Eigen::MatrixXcd residual = observations;
    Eigen::MatrixXcd chosen(n_meas, 0);
    Eigen::MatrixXcd support_coeffs;

    for (int it = 0; it < iterations; ++it)
    {
        const Eigen::MatrixXcd corr = sensing.adjoint() * residual;
        Eigen::Index best = -1;
        double best_score = -1.0;
        for (Eigen::Index k = 0; k < n_atoms; ++k)
        {
            if (taken[static_cast<std::size_t>(k)] || !(energy[k] > 0.0))
                continue;
            double score = corr.row(k).squaredNorm();
            if (options.selection == AtomSelection::Normalized)
                score /= energy[k];
            if (score > best_score) // strict: lowest index wins ties
            {
                best_score = score;
                best = k;
            }
        }
        if (best < 0)
            throw InvalidArgument("no selectable atom left (zero sensing columns)");

        taken[static_cast<std::size_t>(best)] = true;
        est.support.push_back(best);
        chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
        chosen.col(chosen.cols() - 1) = sensing.col(best);

        if (options.update == CoefficientUpdate::LeastSquares)
        {
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(chosen);
            if (cod.rank() < chosen.cols())
                est.rank_deficient = true;
            support_coeffs = cod.solve(observations);
        }
        else
        {
            support_coeffs = chosen.adjoint() * observations;
        }
        residual = observations - chosen * support_coeffs;
        est.residual_norms.push_back(residual.norm());
    }

    for (std::size_t i = 0; i < est.support.size(); ++i)
        est.coeffs_polar.row(est.support[i]) = support_coeffs.row(static_cast<Eigen::Index>(i));
    est.reconstructed = dictionary * est.coeffs_polar;
    return est;
}

SparseEstimate omp(const Eigen::MatrixXcd& observations, const CombiningMatrix& combiner,
                   const PolarDictionary& dict, const OmpOptions& options)
{
    if (combiner.matrix.cols() != dict.n_rows())
        throw InvalidArgument("combiner width does not match the dictionary height");
    const Eigen::MatrixXcd sensing = combiner.matrix * dict.matrix();
    return omp_sensing(observations, sensing, dict.matrix(), options);
}

Eigen::MatrixXcd reconstruct(const SparseEstimate& estimate, const PolarDictionary& dict)
{
    return transform(dict, estimate.coeffs_polar);
}

double nmse(const Eigen::MatrixXcd& truth, const Eigen::MatrixXcd& estimate)
{
    if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
        throw InvalidArgument("NMSE operands differ in shape");
    const double denom = truth.squaredNorm();
    if (!(denom > 0.0))
        throw InvalidArgument("NMSE reference has zero norm");
    return (truth - estimate).squaredNorm() / denom;
}

double nmse_db(const Eigen::MatrixXcd& truth, const Eigen::MatrixXcd& estimate)
{
    return 10.0 * std::log10(nmse(truth, estimate));
}

} // namespace hfce
