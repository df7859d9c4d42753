#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sbparity/bath.hpp"

namespace sbparity::fock {

/// Largest per-mode occupation (and total excitation cutoff) the matrix
/// element routines accept.
inline constexpr int kMaxOccupation = 60;
inline constexpr std::size_t kDefaultMaxDimension = 2'000'000;

/// Bosonic occupation numbers {n_k}, one entry per mode.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> occupations);
    MultiIndex(std::initializer_list<int> occupations);

    /// The all-zero index over `mode_count` modes.
    static MultiIndex vacuum(std::size_t mode_count);

    std::size_t size() const noexcept { return n_.size(); }
    int operator[](std::size_t k) const { return n_[k]; }
    int total() const noexcept;
    std::span<const int> occupations() const noexcept { return n_; }

    /// Entrywise sum.
    MultiIndex operator+(const MultiIndex& other) const;
    bool operator==(const MultiIndex&) const = default;

private:
    std::vector<int> n_;
};

/// Fixed bijection between multi-indices with sum n_k <= n_max and dense
/// indices 0..dim-1.
///
/// Ordering is graded lexicographic: first by total occupation, then
/// ascending lexicographic on (n_0, n_1, ...). For two modes and n_max = 1
/// the order is (0,0), (0,1), (1,0). This ordering is part of every file
/// format that stores coefficient vectors.
class BasisEnumeration {
public:
    std::size_t mode_count() const noexcept { return modes_; }
    int n_max() const noexcept { return n_max_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Throws DomainError when `n` has the wrong length or exceeds n_max.
    std::size_t index_of(const MultiIndex& n) const;
    MultiIndex multi_index_of(std::size_t index) const;
    /// Occupations of basis state `index` without allocating.
    std::span<const int> occupations(std::size_t index) const;
    int total(std::size_t index) const { return totals_[index]; }

private:
    friend BasisEnumeration enumerate_basis(std::size_t, int, std::size_t);

    std::size_t modes_ = 0;
    int n_max_ = 0;
    std::size_t dim_ = 0;
    std::vector<int> table_;   // dim x modes, row-major
    std::vector<int> totals_;
};

/// C(n, k) as an exact integer; throws CapacityError on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

BasisEnumeration enumerate_basis(std::size_t mode_count, int n_max,
                                 std::size_t max_dim = kDefaultMaxDimension);

/// Single-mode factor of L_{m,n}:
/// sum_j (-1)^j sqrt(m! n!) (2q)^(m+n-2j) / ((m-j)! (n-j)! j!).
///
/// Equals (-1)^n <m| exp(2q(a^+ - a)) |n>, so at q = 0 it is (-1)^n delta_mn.
double lmn_single(int m, int n, double q);

/// D_{m,n} = exp(-2 sum q_k^2) prod_k lmn_single(m_k, n_k, q_k).
double dmn(const bath::DiscretizedBath& bath, const MultiIndex& m, const MultiIndex& n);

/// Closed form D_{0,n} = exp(-2 sum q_k^2) prod_k (2 q_k)^(n_k) / sqrt(n_k!).
double d0n_closed(const bath::DiscretizedBath& bath, const MultiIndex& n);

/// Dense D_{m,n} over an enumeration. Rows/columns follow the enumeration order.
Eigen::MatrixXd tunneling_matrix(const bath::DiscretizedBath& bath, const BasisEnumeration& basis);

/// dim x dim block of <m| exp(q(a^+ - a)) |n>, computed by exponentiating the
/// generator in a space of dimension dim + buffer.
///
/// The block is recomputed with a doubled buffer; if any entry moves by more
/// than 1e-10 the truncation has leaked into the block and AccuracyError is
/// thrown.
Eigen::MatrixXd displacement_matrix(double q, std::size_t dim, std::size_t buffer = 10);

/// (-1)^(sum n_k)
int parity_phase(const MultiIndex& n);

}  // namespace sbparity::fock
