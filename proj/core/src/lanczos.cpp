#include "sbparity/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sbparity/errors.hpp"

namespace sbparity::linalg {

EigenPair lowest_eigenpair(const MatVec& apply, Eigen::Index dim, const Eigen::VectorXd& start,
                           const LanczosOptions& options) {
    if (dim < 1) throw DomainError("lowest_eigenpair: empty operator");
    if (start.size() != dim) throw DomainError("lowest_eigenpair: start vector has the wrong size");
    const double start_norm = start.norm();
    if (!(start_norm > 0)) throw DomainError("lowest_eigenpair: start vector is zero");

    EigenPair best;
    best.residual = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x = start / start_norm;
    Eigen::VectorXd w(dim);
    Eigen::VectorXd y(dim);
    int applications = 0;

    while (applications < options.max_iter) {
        const auto budget = static_cast<Eigen::Index>(options.max_iter - applications - 1);
        const Eigen::Index m = std::min<Eigen::Index>({options.krylov_dim, dim, std::max<Eigen::Index>(budget, 1)});

        Eigen::MatrixXd basis(dim, m + 1);
        Eigen::VectorXd alpha(m);
        Eigen::VectorXd beta(m);
        basis.col(0) = x;

        Eigen::Index steps = 0;
        double theta = 0.0;
        Eigen::VectorXd ritz;
        double scale = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            apply(basis.col(j), w);
            ++applications;
            alpha(j) = basis.col(j).dot(w);
            w -= alpha(j) * basis.col(j);
            if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd overlap = basis.leftCols(j + 1).transpose() * w;
                w -= basis.leftCols(j + 1) * overlap;
            }
            beta(j) = w.norm();
            steps = j + 1;
            scale = std::max({scale, std::abs(alpha(j)), beta(j)});

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(alpha.head(steps), beta.head(steps - 1), Eigen::ComputeEigenvectors);
            theta = tri.eigenvalues()(0);
            ritz = tri.eigenvectors().col(0);

            const bool exhausted = beta(j) <= 1e-14 * std::max(scale, 1.0);
            if (exhausted || beta(j) * std::abs(ritz(steps - 1)) < 0.1 * options.tol) break;
            if (j + 1 < m) basis.col(j + 1) = w / beta(j);
        }

        x = basis.leftCols(steps) * ritz;
        x.normalize();
        apply(x, y);
        ++applications;
        theta = x.dot(y);
        const double residual = (y - theta * x).norm();
        if (residual < best.residual) {
            best.value = theta;
            best.vector = x;
            best.residual = residual;
        }
        best.iterations = applications;
        if (residual <= options.tol) {
            best.converged = true;
            return best;
        }
    }
    return best;
}

}  // namespace sbparity::linalg
