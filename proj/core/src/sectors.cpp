#include "sbparity/sectors.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sbparity/errors.hpp"
#include "sbparity/lanczos.hpp"

namespace sbparity::sectors {

namespace {

Eigen::VectorXd displaced_diagonal(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& basis) {
    const auto omega = bath.omega();
    const double shift = bath.reorganization_energy();
    Eigen::VectorXd diag(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const auto n = basis.occupations(i);
        double e = 0.0;
        for (std::size_t k = 0; k < n.size(); ++k) e += omega[k] * n[k];
        diag(static_cast<Eigen::Index>(i)) = e - shift;
    }
    return diag;
}

void check_inputs(const bath::DiscretizedBath& bath, const ModelParams& params,
                  const fock::BasisEnumeration& basis) {
    if (params.epsilon != 0.0)
        throw UnsupportedDecomposition("parity sectors exist only at zero local field (epsilon = 0)");
    if (!std::isfinite(params.delta)) throw DomainError("delta must be finite");
    if (basis.mode_count() != bath.mode_count())
        throw DomainError("enumeration mode count does not match the bath");
}

double coupling_for(Sector sector, double delta) {
    return sector == Sector::Even ? -0.5 * delta : 0.5 * delta;
}

void fix_sign(Eigen::VectorXd& v) {
    // vacuum is index 0 in the graded ordering
    if (v(0) < 0 || (v(0) == 0 && v.sum() < 0)) v = -v;
}

}  // namespace

std::string_view to_string(Sector s) { return s == Sector::Even ? "even" : "odd"; }

SectorMatrix::SectorMatrix(Sector sector, const fock::BasisEnumeration& basis, Eigen::VectorXd diagonal,
                           std::shared_ptr<const Eigen::MatrixXd> tunneling, double coupling)
    : sector_(sector),
      basis_(basis),
      diagonal_(std::move(diagonal)),
      tunneling_(std::move(tunneling)),
      coupling_(coupling) {
    if (!tunneling_ || tunneling_->rows() != diagonal_.size() || tunneling_->cols() != diagonal_.size())
        throw DomainError("SectorMatrix: tunneling table does not match the diagonal");
}

double SectorMatrix::entry(Eigen::Index m, Eigen::Index n) const {
    const double t = coupling_ * (*tunneling_)(m, n);
    return m == n ? diagonal_(m) + t : t;
}

void SectorMatrix::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.noalias() = (*tunneling_) * x;
    y *= coupling_;
    y += diagonal_.cwiseProduct(x);
}

Eigen::MatrixXd SectorMatrix::dense() const {
    Eigen::MatrixXd h = coupling_ * (*tunneling_);
    h.diagonal() += diagonal_;
    return h;
}

SectorMatrix assemble_sector(const bath::DiscretizedBath& bath, const ModelParams& params,
                             const fock::BasisEnumeration& basis, Sector sector) {
    check_inputs(bath, params, basis);
    auto table = std::make_shared<const Eigen::MatrixXd>(fock::tunneling_matrix(bath, basis));
    return SectorMatrix(sector, basis, displaced_diagonal(bath, basis), std::move(table),
                        coupling_for(sector, params.delta));
}

SectorPair assemble_sectors(const bath::DiscretizedBath& bath, const ModelParams& params,
                            const fock::BasisEnumeration& basis) {
    check_inputs(bath, params, basis);
    auto table = std::make_shared<const Eigen::MatrixXd>(fock::tunneling_matrix(bath, basis));
    Eigen::VectorXd diag = displaced_diagonal(bath, basis);
    return SectorPair{
        SectorMatrix(Sector::Even, basis, diag, table, coupling_for(Sector::Even, params.delta)),
        SectorMatrix(Sector::Odd, basis, std::move(diag), table, coupling_for(Sector::Odd, params.delta)),
    };
}

GroundStateResult ground_state(const SectorMatrix& matrix, const SolverOptions& options) {
    const Eigen::Index dim = matrix.dim();
    if (dim < 1) throw DomainError("ground_state: empty matrix");

    GroundStateResult result;
    result.sector = matrix.sector();
    if (dim <= options.dense_threshold) {
        const Eigen::MatrixXd h = matrix.dense();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
        if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed", std::numeric_limits<double>::infinity());
        result.energy = solver.eigenvalues()(0);
        result.coefficients = solver.eigenvectors().col(0);
        result.coefficients.normalize();
        result.iterations = 1;
    } else {
        linalg::LanczosOptions lanczos;
        lanczos.tol = options.tol;
        lanczos.max_iter = options.max_iter;
        const linalg::MatVec op = [&matrix](const Eigen::VectorXd& x, Eigen::VectorXd& y) { matrix.apply(x, y); };
        const linalg::EigenPair pair = linalg::lowest_eigenpair(op, dim, Eigen::VectorXd::Ones(dim), lanczos);
        if (!pair.converged)
            throw SolverError("Lanczos did not converge in " + std::to_string(pair.iterations) +
                                  " iterations (best residual " + std::to_string(pair.residual) + ")",
                              pair.residual);
        result.energy = pair.value;
        result.coefficients = pair.vector;
        result.iterations = pair.iterations;
    }
    fix_sign(result.coefficients);

    Eigen::VectorXd hc(dim);
    matrix.apply(result.coefficients, hc);
    result.residual = (hc - result.energy * result.coefficients).norm();
    if (result.residual > options.tol)
        throw SolverError("ground state residual " + std::to_string(result.residual) + " exceeds tolerance",
                          result.residual);
    return result;
}

SectorGroundStates solve_sectors(const bath::DiscretizedBath& bath, const ModelParams& params,
                                 const fock::BasisEnumeration& basis, const SolverOptions& options) {
    const SectorPair pair = assemble_sectors(bath, params, basis);
    return SectorGroundStates{ground_state(pair.even, options), ground_state(pair.odd, options)};
}

double sector_gap(const bath::DiscretizedBath& bath, const ModelParams& params,
                  const fock::BasisEnumeration& basis, const SolverOptions& options) {
    if (params.delta == 0.0) throw DomainError("sector_gap: delta must be nonzero");
    return solve_sectors(bath, params, basis, options).gap();
}

}  // namespace sbparity::sectors
