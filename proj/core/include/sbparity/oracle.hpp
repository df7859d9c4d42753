#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "sbparity/bath.hpp"
#include "sbparity/fockspace.hpp"
#include "sbparity/sectors.hpp"

namespace sbparity::oracle {

/// Largest Fock enumeration the dense path accepts; the matrix is twice this.
inline constexpr std::size_t kDenseCap = 2000;

/// Dense spin-boson Hamiltonian
///   H = (eps/2) sz - (Delta/2) sx + sum_k w_k a_k^+ a_k + sum_k l_k (a_k^+ + a_k) sz
/// in the undisplaced Fock basis. Index layout: spin * dim + fock_index with
/// spin 0 = up (sz = +1) first.
struct FullModel {
    sectors::ModelParams params;
    bath::DiscretizedBath bath;
    fock::BasisEnumeration enumeration;
    Eigen::MatrixXd hamiltonian;
};

FullModel assemble_full(const sectors::ModelParams& params, const bath::DiscretizedBath& bath,
                        const fock::BasisEnumeration& basis);

/// sx (x) exp(i pi sum_k a_k^+ a_k)
Eigen::MatrixXd parity_matrix(const fock::BasisEnumeration& basis);
/// [[1, P], [-P, 1]] / sqrt(2) with P = exp(i pi N)
Eigen::MatrixXd unitary_U(const fock::BasisEnumeration& basis);
Eigen::MatrixXd sigma_z_full(const fock::BasisEnumeration& basis);

double spectral_norm(const Eigen::MatrixXd& m);
/// Spectral norm of AB - BA.
double commutator_norm(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct DenseSpectrum {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< columns match `values`
};

DenseSpectrum diagonalize(const FullModel& model);

/// U H U^+ split into its diagonal blocks.
struct BlockDecomposition {
    Eigen::MatrixXd upper;  ///< H^+ in the Fock basis
    Eigen::MatrixXd lower;  ///< H^- in the Fock basis
    double off_diagonal_norm = 0.0;
};

BlockDecomposition block_decompose(const FullModel& model);

/// max_i |sorted eig(H) - sorted(eig(upper) u eig(lower))|
double spectrum_partition_deviation(const FullModel& model);

/// Lowest energies of the two rotated blocks: the dense counterpart of the sector solver.
struct DenseSectorEnergies {
    double even = 0.0;
    double odd = 0.0;
    double gap() const noexcept { return odd - even; }
};

DenseSectorEnergies dense_sector_energies(const FullModel& model);

enum class Parity { Even, Odd, Mixed };
std::string_view to_string(Parity p);

struct ParityVerdict {
    Parity parity = Parity::Mixed;
    double expectation = 0.0;  ///< <psi_0| Pi |psi_0>
    double gap = 0.0;          ///< E_1 - E_0 of the dense spectrum
};

/// Parity of the dense ground state. Throws DegenerateGroundError when the
/// lowest two dense levels are closer than 1e-12.
ParityVerdict ground_parity(const FullModel& model);

/// M(theta) = -sin(2 theta) * sum_n c+_n c-_n for the correlated state
/// (cos theta phi+_0, sin theta phi-_0) built from the two sector ground states.
double magnetization(double theta, const sectors::GroundStateResult& plus,
                     const sectors::GroundStateResult& minus);

/// <sz> in the dense ground state.
double dense_magnetization(const FullModel& model);

/// ||[H', sz (x) 1]|| for the frozen-spin Hamiltonian (Delta = 0, eps = 0).
double frozen_spin_check(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& basis);
/// Same commutator with an explicit tunneling amplitude.
double sigma_z_commutator(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& basis,
                          double delta);

/// Maps sector coefficients over the displaced basis onto the undisplaced
/// Fock enumeration `target`. Even states are sum_n c_n D(-q)|n>; Odd states
/// carry the extra exp(i pi N).
Eigen::VectorXd to_fock(const bath::DiscretizedBath& bath, const fock::BasisEnumeration& displaced,
                        const Eigen::VectorXd& coefficients, sectors::Sector sector,
                        const fock::BasisEnumeration& target);

/// U^+ (cos theta phi+, sin theta phi-) in the original spin (x) Fock frame.
Eigen::VectorXd superposed_state(double theta, const bath::DiscretizedBath& bath,
                                 const fock::BasisEnumeration& displaced,
                                 const sectors::GroundStateResult& plus,
                                 const sectors::GroundStateResult& minus,
                                 const fock::BasisEnumeration& target);

}  // namespace sbparity::oracle
