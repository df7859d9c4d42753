#pragma once

#include <memory>
#include <string_view>

#include <Eigen/Dense>

#include "sbparity/bath.hpp"
#include "sbparity/fockspace.hpp"

namespace sbparity::sectors {

/// Tunneling Delta and local field epsilon of the spin. The parity
/// decomposition below requires epsilon == 0.
struct ModelParams {
    double delta = 0.1;
    double epsilon = 0.0;
};

enum class Sector { Even, Odd };

std::string_view to_string(Sector s);

/// One parity block in the displaced-oscillator basis:
///   H(m, n) = delta_mn sum_k omega_k (n_k - q_k^2) + coupling * D_{m,n}
/// with coupling = -Delta/2 for Even and +Delta/2 for Odd. The Odd block is
/// written in the basis e^{i pi N} |n>_A, where it differs from the Even
/// block only in the sign of the tunneling term.
class SectorMatrix {
public:
    SectorMatrix(Sector sector, const fock::BasisEnumeration& basis, Eigen::VectorXd diagonal,
                 std::shared_ptr<const Eigen::MatrixXd> tunneling, double coupling);

    Sector sector() const noexcept { return sector_; }
    const fock::BasisEnumeration& enumeration() const noexcept { return basis_; }
    Eigen::Index dim() const noexcept { return diagonal_.size(); }
    double coupling() const noexcept { return coupling_; }
    const Eigen::VectorXd& diagonal() const noexcept { return diagonal_; }
    const Eigen::MatrixXd& tunneling() const noexcept { return *tunneling_; }

    double entry(Eigen::Index m, Eigen::Index n) const;
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
    Eigen::MatrixXd dense() const;

private:
    Sector sector_;
    fock::BasisEnumeration basis_;
    Eigen::VectorXd diagonal_;
    std::shared_ptr<const Eigen::MatrixXd> tunneling_;
    double coupling_;
};

struct SectorPair {
    SectorMatrix even;
    SectorMatrix odd;
};

/// Throws UnsupportedDecomposition when params.epsilon != 0.
SectorMatrix assemble_sector(const bath::DiscretizedBath& bath, const ModelParams& params,
                             const fock::BasisEnumeration& basis, Sector sector);

/// Both sectors from one shared D_{m,n} table.
SectorPair assemble_sectors(const bath::DiscretizedBath& bath, const ModelParams& params,
                            const fock::BasisEnumeration& basis);

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 5000;
    Eigen::Index dense_threshold = 512;  ///< at or below this dimension use a dense solver
};

struct GroundStateResult {
    double energy = 0.0;
    Eigen::VectorXd coefficients;  ///< unit norm; vacuum coefficient >= 0
    double residual = 0.0;
    Sector sector = Sector::Even;
    int iterations = 0;
};

/// Lowest eigenpair. Starts the iterative path from the normalized all-ones
/// vector. Throws SolverError carrying the best residual on failure.
GroundStateResult ground_state(const SectorMatrix& matrix, const SolverOptions& options = {});

struct SectorGroundStates {
    GroundStateResult even;
    GroundStateResult odd;
    double gap() const noexcept { return odd.energy - even.energy; }
};

SectorGroundStates solve_sectors(const bath::DiscretizedBath& bath, const ModelParams& params,
                                 const fock::BasisEnumeration& basis, const SolverOptions& options = {});

/// E^-_0 - E^+_0. Requires delta != 0.
double sector_gap(const bath::DiscretizedBath& bath, const ModelParams& params,
                  const fock::BasisEnumeration& basis, const SolverOptions& options = {});

}  // namespace sbparity::sectors
