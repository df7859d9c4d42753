#pragma once

#include <functional>

#include <Eigen/Dense>

namespace sbparity::linalg {

/// y = A x for a real symmetric operator A.
using MatVec = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct LanczosOptions {
    double tol = 1e-10;     ///< target for ||A x - theta x||
    int max_iter = 5000;    ///< total operator applications
    int krylov_dim = 80;    ///< basis size before an explicit restart
};

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;  ///< explicitly recomputed ||A x - value x||
    int iterations = 0;     ///< operator applications
    bool converged = false;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
/// Each cycle restarts from the current Ritz vector. Never throws on
/// non-convergence; the caller inspects `converged`.
EigenPair lowest_eigenpair(const MatVec& apply, Eigen::Index dim, const Eigen::VectorXd& start,
                           const LanczosOptions& options = {});

}  // namespace sbparity::linalg
