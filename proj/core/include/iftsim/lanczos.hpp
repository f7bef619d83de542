#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "iftsim/state_vector.hpp"

namespace ift {

using MatVec = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct LanczosOptions {
    int n_eigs = 1;
    double tol = 1e-10;
    int max_iter = 600;
    int restarts = 2;
    uint64_t seed = 12345;
    int dense_fallback_dim = 2000;
};

struct LanczosResult {
    std::vector<double> eigenvalues;          // ascending
    std::vector<Eigen::VectorXcd> eigenvectors;
    std::vector<double> residuals;            // ||A v - lambda v||
    bool converged = false;
    int iterations = 0;
};

/// Lowest eigenpairs of a Hermitian operator by Lanczos with full
/// reorthogonalization. Falls back to a dense solve for small dimensions.
LanczosResult lowest_eigenpairs(const MatVec& apply, int dim, const LanczosOptions& opts);

LanczosResult lowest_eigenpairs(const Eigen::SparseMatrix<cd>& H, const LanczosOptions& opts);

/// v <- exp(i theta A) v for Hermitian A, via segmented Krylov propagation.
/// norm_bound must upper-bound the spectral radius of A.
void krylov_exp_apply(const MatVec& apply, double theta, double norm_bound,
                      Eigen::VectorXcd& v, double tol = 1e-13);

} // namespace ift
