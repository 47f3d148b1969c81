// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hfce/measurement.hpp"
#include "hfce/polar_dictionary.hpp"

#include <Eigen/Dense>
#include <vector>

namespace hfce
{

enum class CoefficientUpdate
{
    LeastSquares,  // pseudo-inverse of A(:, s)
    MatchedFilter, // A(:, s)^H Y, kept for ablation only
};

enum class AtomSelection
{
    Normalized, // ||A(:,k)^H R||^2 / ||A(:,k)||^2, the best single-atom LS fit
    Raw,        // ||A(:,k)^H R||^2
};

struct OmpOptions
{
    int iterations = 1; // T
    CoefficientUpdate update = CoefficientUpdate::LeastSquares;
    AtomSelection selection = AtomSelection::Normalized;
};

struct SparseEstimate
{
    std::vector<Eigen::Index> support; // selection order
    Eigen::MatrixXcd coeffs_polar;     // S x M, zero off support
    Eigen::MatrixXcd reconstructed;    // N x M
    std::vector<double> residual_norms; // ||R||_F after each iteration
    bool rank_deficient = false;        // some LS step fell back to the minimum-norm solution
};

// Joint-support OMP over a generic sensing matrix A (m x S) with synthesis dictionary U (N x S).
SparseEstimate omp_sensing(const Eigen::MatrixXcd& observations, const Eigen::MatrixXcd& sensing,
                           const Eigen::MatrixXcd& dictionary, const OmpOptions& options);

// OMP with A = W U.
SparseEstimate omp(const Eigen::MatrixXcd& observations, const CombiningMatrix& combiner,
                   const PolarDictionary& dict, const OmpOptions& options);

Eigen::MatrixXcd reconstruct(const SparseEstimate& estimate, const PolarDictionary& dict);

// ||H - H_hat||_F^2 / ||H||_F^2.
double nmse(const Eigen::MatrixXcd& truth, const Eigen::MatrixXcd& estimate);
double nmse_db(const Eigen::MatrixXcd& truth, const Eigen::MatrixXcd& estimate);

} // namespace hfce
