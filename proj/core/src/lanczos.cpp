#include "iftsim/lanczos.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "iftsim/error.hpp"

namespace ift {

namespace {

LanczosResult dense_solve(const MatVec& apply, int dim, int n_eigs) {
    Eigen::MatrixXcd A(dim, dim);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim), col(dim);
    for (int j = 0; j < dim; ++j) {
        e.setZero();
        e[j] = 1.0;
        apply(e, col);
        A.col(j) = col;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    LanczosResult r;
    r.converged = true;
    for (int i = 0; i < n_eigs && i < dim; ++i) {
        r.eigenvalues.push_back(es.eigenvalues()[i]);
        r.eigenvectors.push_back(es.eigenvectors().col(i));
        r.residuals.push_back(0.0);
    }
    return r;
}

} // namespace

LanczosResult lowest_eigenpairs(const MatVec& apply, int dim, const LanczosOptions& opts) {
    if (dim <= 0) throw InvalidArgument("lowest_eigenpairs: empty operator");
    if (dim <= opts.dense_fallback_dim || dim <= opts.n_eigs + 2) {
        return dense_solve(apply, dim, opts.n_eigs);
    }
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    LanczosResult result;
    Eigen::VectorXcd v0(dim);
    for (int i = 0; i < dim; ++i) v0[i] = cd{gauss(rng), gauss(rng)};
    v0.normalize();

    const int m_max = std::min(opts.max_iter, dim);
    std::vector<Eigen::VectorXcd> V;
    std::vector<double> alpha, beta;

    for (int restart = 0; restart <= opts.restarts; ++restart) {
        V.clear();
        alpha.clear();
        beta.clear();
        V.push_back(v0);
        Eigen::VectorXcd w(dim);
        double prev_low = 1e300;
        int m = 0;
        bool done = false;
        while (m < m_max && !done) {
            apply(V[m], w);
            cd a = V[m].dot(w);
            alpha.push_back(a.real());
            w -= a * V[m];
            if (m > 0) w -= cd{beta[m - 1], 0.0} * V[m - 1];
            // full reorthogonalization, twice for stability
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : V) w -= q.dot(w) * q;
            }
            double b = w.norm();
            ++m;
            if (b < 1e-13) {
                done = true; // invariant subspace found
                break;
            }
            if (m >= m_max) break;
            beta.push_back(b);
            V.push_back(w / b);
            // convergence check on the lowest Ritz values every few steps
            if (m >= opts.n_eigs + 2 && m % 5 == 0) {
                Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
                for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
                for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
                double low = es.eigenvalues()[std::min(opts.n_eigs - 1, m - 1)];
                if (std::abs(low - prev_low) < opts.tol * std::max(1.0, std::abs(low))) {
                    done = true;
                }
                prev_low = low;
            }
        }
        int mm = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
        for (int i = 0; i < mm; ++i) T(i, i) = alpha[i];
        for (int i = 0; i + 1 < mm; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);

        result = LanczosResult{};
        result.iterations = mm;
        for (int i = 0; i < opts.n_eigs && i < mm; ++i) {
            Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(dim);
            for (int j = 0; j < mm; ++j) vec += cd{es.eigenvectors()(j, i), 0.0} * V[j];
            vec.normalize();
            apply(vec, w);
            double lambda = es.eigenvalues()[i];
            double resid = (w - lambda * vec).norm();
            result.eigenvalues.push_back(lambda);
            result.eigenvectors.push_back(std::move(vec));
            result.residuals.push_back(resid);
        }
        result.converged = true;
        for (double r : result.residuals) {
            if (r > 1e-7) result.converged = false;
        }
        if (result.converged) return result;
        // restart from the best current estimate of the ground vector
        if (!result.eigenvectors.empty()) v0 = result.eigenvectors[0];
    }
    if (!result.converged) {
        double worst = 0.0;
        for (double r : result.residuals) worst = std::max(worst, r);
        throw NumericalError("Lanczos failed to converge, worst residual " +
                             std::to_string(worst));
    }
    return result;
}

LanczosResult lowest_eigenpairs(const Eigen::SparseMatrix<cd>& H, const LanczosOptions& opts) {
    MatVec apply = [&H](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = H * x; };
    return lowest_eigenpairs(apply, static_cast<int>(H.rows()), opts);
}

void krylov_exp_apply(const MatVec& apply, double theta, double norm_bound,
                      Eigen::VectorXcd& v, double tol) {
    if (theta == 0.0) return;
    const double nrm0 = v.norm();
    if (nrm0 == 0.0) return;
    // split so each segment has |theta| * ||A|| <= ~4, then a modest Krylov
    // dimension reaches machine precision
    int segments = std::max(1, static_cast<int>(std::ceil(std::abs(theta) * norm_bound / 4.0)));
    const double dt = theta / segments;
    const int dim = static_cast<int>(v.size());
    const int m_cap = std::min(40, dim);
    Eigen::VectorXcd w(dim);
    for (int s = 0; s < segments; ++s) {
        double nv = v.norm();
        if (nv == 0.0) return;
        std::vector<Eigen::VectorXcd> V;
        std::vector<double> alpha, beta;
        V.push_back(v / nv);
        int m = 0;
        while (m < m_cap) {
            apply(V[m], w);
            cd a = V[m].dot(w);
            alpha.push_back(a.real());
            w -= a * V[m];
            if (m > 0) w -= cd{beta[m - 1], 0.0} * V[m - 1];
            for (const auto& q : V) w -= q.dot(w) * q;
            double b = w.norm();
            ++m;
            if (b < 1e-14) break;
            if (m >= m_cap) break;
            beta.push_back(b);
            V.push_back(w / b);
            // cheap a-posteriori cutoff: the Lanczos coefficients decay once
            // the Krylov space resolves exp(i dt A) on v
            if (m > 6) {
                double scale = std::abs(dt);
                double est = 1.0;
                for (int j = 0; j < m - 1; ++j) est *= scale * beta[j] / (j + 1);
                if (est < tol) break;
            }
        }
        int mm = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
        for (int i = 0; i < mm; ++i) T(i, i) = alpha[i];
        for (int i = 0; i + 1 < mm; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        // exp(i dt T) e1
        Eigen::VectorXcd small = Eigen::VectorXcd::Zero(mm);
        for (int i = 0; i < mm; ++i) {
            cd ph = std::exp(cd{0.0, dt * es.eigenvalues()[i]});
            for (int r = 0; r < mm; ++r) {
                small[r] += es.eigenvectors()(r, i) * ph * es.eigenvectors()(0, i);
            }
        }
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
        for (int j = 0; j < mm; ++j) out += small[j] * V[j];
        v = out * nv;
    }
}

} // namespace ift
