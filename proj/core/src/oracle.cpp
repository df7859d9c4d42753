#include "sbparity/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "sbparity/errors.hpp"

namespace sbparity::oracle {

namespace {

Eigen::VectorXd parity_diagonal(const fock::BasisEnumeration& basis) {
    Eigen::VectorXd p(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t i = 0; i < basis.dim(); ++i)
        p(static_cast<Eigen::Index>(i)) = (basis.total(i) % 2 == 0) ? 1.0 : -1.0;
    return p;
}

void check_cap(const fock::BasisEnumeration& basis) {
    if (basis.dim() > kDenseCap)
        throw CapacityError("dense oracle: enumeration dimension " + std::to_string(basis.dim()) +
                            " exceeds the cap of " + std::to_string(kDenseCap));
}

Eigen::MatrixXd build_hamiltonian(const sectors::ModelParams& params, const bath::DiscretizedBath& bath,
                                  const fock::BasisEnumeration& basis) {
    if (basis.mode_count() != bath.mode_count())
        throw DomainError("dense oracle: enumeration mode count does not match the bath");
    check_cap(basis);
    const auto dim = static_cast<Eigen::Index>(basis.dim());
    const auto omega = bath.omega();
    const auto lambda = bath.lambda();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);

    std::vector<int> raised(basis.mode_count());
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto n = basis.occupations(static_cast<std::size_t>(i));
        double boson = 0.0;
        for (std::size_t k = 0; k < n.size(); ++k) boson += omega[k] * n[k];
        h(i, i) = 0.5 * params.epsilon + boson;
        h(dim + i, dim + i) = -0.5 * params.epsilon + boson;
        h(i, dim + i) = -0.5 * params.delta;
        h(dim + i, i) = -0.5 * params.delta;

        if (basis.total(static_cast<std::size_t>(i)) >= basis.n_max()) continue;
        for (std::size_t k = 0; k < n.size(); ++k) {
            std::copy(n.begin(), n.end(), raised.begin());
            ++raised[k];
            const auto j = static_cast<Eigen::Index>(basis.index_of(fock::MultiIndex(raised)));
            const double amp = lambda[k] * std::sqrt(static_cast<double>(n[k] + 1));
            h(j, i) += amp;
            h(i, j) += amp;
            h(dim + j, dim + i) -= amp;
            h(dim + i, dim + j) -= amp;
        }
    }
    return h;
}

Eigen::VectorXd apply_parity(const Eigen::VectorXd& psi, const Eigen::VectorXd& p) {
    const Eigen::Index dim = p.size();
    Eigen::VectorXd out(2 * dim);
    out.head(dim) = p.cwiseProduct(psi.tail(dim));
    out.tail(dim) = p.cwiseProduct(psi.head(dim));
    return out;
}

Eigen::MatrixXd displacement_with_buffer(double q, std::size_t dim) {
    for (std::size_t buffer = 10; buffer <= 640; buffer *= 2) {
        try {
            return fock::displacement_matrix(q, dim, buffer);
        } catch (const AccuracyError&) {
        }
    }
    throw AccuracyError("to_fock: displacement matrix did not converge for q = " + std::to_string(q));
}

}  // namespace

FullModel assemble_full(const sectors::ModelParams& params, const bath::DiscretizedBath& bath,
                        const fock::BasisEnumeration& basis) {
    return FullModel{params, bath, basis, build_hamiltonian(params, bath, basis)};
}

Eigen::MatrixXd parity_matrix(const fock::BasisEnumeration& basis) {
    check_cap(basis);
    const Eigen::VectorXd p = parity_diagonal(basis);
    const Eigen::Index dim = p.size();
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
    pi.topRightCorner(dim, dim) = p.asDiagonal();
    pi.bottomLeftCorner(dim, dim) = p.asDiagonal();
    return pi;
}

Eigen::MatrixXd unitary_U(const fock::BasisEnumeration& basis) {
    check_cap(basis);
    const Eigen::VectorXd p = parity_diagonal(basis);
    const Eigen::Index dim = p.size();
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
    u.topLeftCorner(dim, dim).diagonal().setConstant(r);
    u.bottomRightCorner(dim, dim).diagonal().setConstant(r);
    u.topRightCorner(dim, dim) = (r * p).asDiagonal();
    u.bottomLeftCorner(dim, dim) = (-r * p).asDiagonal();
    return u;
}

Eigen::MatrixXd sigma_z_full(const fock::BasisEnumeration& basis) {
    check_cap(basis);
    const auto dim = static_cast<Eigen::Index>(basis.dim());
    Eigen::VectorXd d(2 * dim);
    d.head(dim).setOnes();
    d.tail(dim).setConstant(-1.0);
    return d.asDiagonal();
}

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    const Eigen::MatrixXd gram = m.transpose() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double commutator_norm(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return spectral_norm(a * b - b * a);
}

DenseSpectrum diagonalize(const FullModel& model) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(model.hamiltonian);
    if (solver.info() != Eigen::Success) throw Error("dense diagonalization failed");
    return DenseSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

BlockDecomposition block_decompose(const FullModel& model) {
    const Eigen::MatrixXd u = unitary_U(model.enumeration);
    const Eigen::MatrixXd rotated = u * model.hamiltonian * u.transpose();
    const auto dim = static_cast<Eigen::Index>(model.enumeration.dim());
    BlockDecomposition blocks;
    blocks.upper = rotated.topLeftCorner(dim, dim);
    blocks.lower = rotated.bottomRightCorner(dim, dim);
    blocks.off_diagonal_norm = spectral_norm(rotated.topRightCorner(dim, dim));
    return blocks;
}

double spectrum_partition_deviation(const FullModel& model) {
    const BlockDecomposition blocks = block_decompose(model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> upper(blocks.upper, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lower(blocks.lower, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(model.hamiltonian, Eigen::EigenvaluesOnly);

    std::vector<double> merged(upper.eigenvalues().begin(), upper.eigenvalues().end());
    merged.insert(merged.end(), lower.eigenvalues().begin(), lower.eigenvalues().end());
    std::sort(merged.begin(), merged.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < merged.size(); ++i)
        worst = std::max(worst, std::abs(merged[i] - full.eigenvalues()(static_cast<Eigen::Index>(i))));
    return worst;
}

DenseSectorEnergies dense_sector_energies(const FullModel& model) {
    const BlockDecomposition blocks = block_decompose(model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> upper(blocks.upper, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lower(blocks.lower, Eigen::EigenvaluesOnly);
    return DenseSectorEnergies{upper.eigenvalues()(0), lower.eigenvalues()(0)};
}

std::string_view to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "+1";
        case Parity::Odd: return "-1";
        case Parity::Mixed: return "mixed";
    }
    return "mixed";
}

ParityVerdict ground_parity(const FullModel& model) {
    const DenseSpectrum spectrum = diagonalize(model);
    ParityVerdict verdict;
    verdict.gap = spectrum.values.size() > 1 ? spectrum.values(1) - spectrum.values(0) : std::numeric_limits<double>::infinity();
    if (verdict.gap < 1e-12)
        throw DegenerateGroundError("dense ground state is degenerate (gap " + std::to_string(verdict.gap) + ")");
    const Eigen::VectorXd psi = spectrum.vectors.col(0);
    verdict.expectation = psi.dot(apply_parity(psi, parity_diagonal(model.enumeration)));
    if (std::abs(verdict.expectation) > 1.0 - 1e-8)
        verdict.parity = verdict.expectation > 0 ? Parity::Even : Parity::Odd;
    else
        verdict.parity = Parity::Mixed;
    return verdict;
}

double magnetization(double theta, const sectors::GroundStateResult& plus,
                     const sectors::GroundStateResult& minus) {
    if (plus.coefficients.size() != minus.coefficients.size())
        throw DomainError("magnetization: sector results use different enumerations");
    return -std::sin(2.0 * theta) * plus.coefficients.dot(minus.coefficients);
}

double dense_magnetization(const FullModel& model) {
    const DenseSpectrum spectrum = diagonalize(model);
    const auto dim = static_cast<Eigen::Index>(model.enumeration.dim());
    const Eigen::VectorXd psi = spectrum.vectors.col(0);
    return psi.head(dim).squaredNorm() - psi.tail(dim).squaredNorm();
}

double sigma_z_commutator(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& basis, double delta) {
    const Eigen::MatrixXd h = build_hamiltonian(sectors::ModelParams{delta, 0.0}, bath, basis);
    return commutator_norm(h, sigma_z_full(basis));
}

double frozen_spin_check(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& basis) {
    return sigma_z_commutator(bath, basis, 0.0);
}

Eigen::VectorXd to_fock(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& displaced,
                        const Eigen::VectorXd& coefficients, sectors::Sector sector,
                        const fock::BasisEnumeration& target) {
    if (displaced.mode_count() != bath.mode_count() || target.mode_count() != bath.mode_count())
        throw DomainError("to_fock: mode counts differ");
    if (static_cast<std::size_t>(coefficients.size()) != displaced.dim())
        throw DomainError("to_fock: coefficient vector does not match the enumeration");

    const std::size_t side = static_cast<std::size_t>(std::max(displaced.n_max(), target.n_max())) + 1;
    std::vector<Eigen::MatrixXd> shift;
    for (double q : bath.q()) shift.push_back(displacement_with_buffer(-q, side));

    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(target.dim()));
    for (std::size_t f = 0; f < target.dim(); ++f) {
        const auto nf = target.occupations(f);
        double amp = 0.0;
        for (std::size_t n = 0; n < displaced.dim(); ++n) {
            const auto nn = displaced.occupations(n);
            double overlap = coefficients(static_cast<Eigen::Index>(n));
            for (std::size_t k = 0; k < nn.size() && overlap != 0.0; ++k) overlap *= shift[k](nf[k], nn[k]);
            amp += overlap;
        }
        if (sector == sectors::Sector::Odd && target.total(f) % 2 == 1) amp = -amp;
        out(static_cast<Eigen::Index>(f)) = amp;
    }
    return out;
}

Eigen::VectorXd superposed_state(double theta, const bath::DiscretizedBath& bath,
                                 const fock::BasisEnumeration& displaced,
                                 const sectors::GroundStateResult& plus,
                                 const sectors::GroundStateResult& minus,
                                 const fock::BasisEnumeration& target) {
    const Eigen::VectorXd a = std::cos(theta) * to_fock(bath, displaced, plus.coefficients, sectors::Sector::Even, target);
    const Eigen::VectorXd b = std::sin(theta) * to_fock(bath, displaced, minus.coefficients, sectors::Sector::Odd, target);
    const Eigen::VectorXd p = parity_diagonal(target);
    const double r = 1.0 / std::numbers::sqrt2;
    const Eigen::Index dim = p.size();
    Eigen::VectorXd psi(2 * dim);
    psi.head(dim) = r * (a - p.cwiseProduct(b));
    psi.tail(dim) = r * (p.cwiseProduct(a) + b);
    return psi;
}

}  // namespace sbparity::oracle
