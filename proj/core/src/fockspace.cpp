#include "sbparity/fockspace.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "sbparity/errors.hpp"

namespace sbparity::fock {

namespace {

__extension__ typedef unsigned __int128 u128;

// Number of occupation vectors over `parts` modes summing exactly to `total`.
std::uint64_t compositions(std::uint64_t total, std::uint64_t parts) {
    if (parts == 0) return total == 0 ? 1 : 0;
    return binomial(total + parts - 1, parts - 1);
}

void emit_compositions(std::size_t modes, int remaining, std::vector<int>& current, std::size_t pos,
                       std::vector<int>& table) {
    if (pos + 1 == modes) {
        current[pos] = remaining;
        table.insert(table.end(), current.begin(), current.end());
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        current[pos] = v;
        emit_compositions(modes, remaining - v, current, pos + 1, table);
    }
}

// Associated Laguerre polynomial L_n^(a)(y) by the three-term recurrence in n.
// The alternating power sum it replaces loses most of its digits to
// cancellation once 2q exceeds about 1.
double laguerre(int n, int a, double y) {
    double previous = 1.0;
    if (n == 0) return previous;
    double current = 1.0 + a - y;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - y) * current - (k + a) * previous) / (k + 1.0);
        previous = current;
        current = next;
    }
    return current;
}

void check_occupation(int m, int n) {
    if (m < 0 || n < 0) throw DomainError("occupation numbers must be non-negative");
    if (m > kMaxOccupation || n > kMaxOccupation)
        throw CapacityError("occupation exceeds the supported maximum of " +
                            std::to_string(kMaxOccupation));
}

void check_modes(const bath::DiscretizedBath& bath, const MultiIndex& n) {
    if (n.size() != bath.mode_count())
        throw DomainError("multi-index length does not match the bath mode count");
}

Eigen::MatrixXd expm_block(double q, std::size_t full, std::size_t dim) {
    Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(full, full);
    for (std::size_t n = 0; n + 1 < full; ++n) {
        const double amp = q * std::sqrt(static_cast<double>(n + 1));
        generator(n + 1, n) = amp;   // a^+
        generator(n, n + 1) = -amp;  // -a
    }
    Eigen::MatrixXd exponential = generator.exp();
    return exponential.topLeftCorner(dim, dim);
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> occupations) : n_(std::move(occupations)) {
    for (int v : n_)
        if (v < 0) throw DomainError("occupation numbers must be non-negative");
}

MultiIndex::MultiIndex(std::initializer_list<int> occupations)
    : MultiIndex(std::vector<int>(occupations)) {}

MultiIndex MultiIndex::vacuum(std::size_t mode_count) {
    return MultiIndex(std::vector<int>(mode_count, 0));
}

int MultiIndex::total() const noexcept { return std::accumulate(n_.begin(), n_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (other.size() != size()) throw DomainError("multi-index length mismatch");
    std::vector<int> sum(n_);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += other.n_[k];
    return MultiIndex(std::move(sum));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw CapacityError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

BasisEnumeration enumerate_basis(std::size_t mode_count, int n_max, std::size_t max_dim) {
    if (mode_count < 1) throw DomainError("enumerate_basis: mode_count must be >= 1");
    if (n_max < 0) throw DomainError("enumerate_basis: n_max must be >= 0");
    if (n_max > kMaxOccupation)
        throw CapacityError("enumerate_basis: n_max exceeds " + std::to_string(kMaxOccupation));
    std::uint64_t dim = 0;
    try {
        dim = binomial(static_cast<std::uint64_t>(n_max) + mode_count, mode_count);
    } catch (const CapacityError&) {
        throw CapacityError("enumerate_basis: basis dimension overflows");
    }
    if (dim > max_dim)
        throw CapacityError("enumerate_basis: dimension " + std::to_string(dim) +
                            " exceeds the configured maximum " + std::to_string(max_dim));

    BasisEnumeration basis;
    basis.modes_ = mode_count;
    basis.n_max_ = n_max;
    basis.dim_ = static_cast<std::size_t>(dim);
    basis.table_.reserve(basis.dim_ * mode_count);
    basis.totals_.reserve(basis.dim_);
    std::vector<int> current(mode_count, 0);
    for (int t = 0; t <= n_max; ++t) {
        emit_compositions(mode_count, t, current, 0, basis.table_);
        basis.totals_.insert(basis.totals_.end(), compositions(t, mode_count), t);
    }
    return basis;
}

std::size_t BasisEnumeration::index_of(const MultiIndex& n) const {
    if (n.size() != modes_) throw DomainError("index_of: multi-index has the wrong mode count");
    const int t = n.total();
    if (t > n_max_) throw DomainError("index_of: multi-index exceeds the excitation cutoff");
    // States of lower total come first.
    std::uint64_t rank = t == 0 ? 0 : binomial(static_cast<std::uint64_t>(t - 1) + modes_, modes_);
    int remaining = t;
    for (std::size_t k = 0; k + 1 < modes_; ++k) {
        for (int v = 0; v < n[k]; ++v) rank += compositions(remaining - v, modes_ - k - 1);
        remaining -= n[k];
    }
    return static_cast<std::size_t>(rank);
}

MultiIndex BasisEnumeration::multi_index_of(std::size_t index) const {
    auto occ = occupations(index);
    return MultiIndex(std::vector<int>(occ.begin(), occ.end()));
}

std::span<const int> BasisEnumeration::occupations(std::size_t index) const {
    if (index >= dim_) throw DomainError("basis index out of range");
    return {table_.data() + index * modes_, modes_};
}

double lmn_single(int m, int n, double q) {
    check_occupation(m, n);
    if (m < n) std::swap(m, n);
    const int a = m - n;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double x = 2.0 * q;
    if (x == 0.0) return a == 0 ? sign : 0.0;
    // (-1)^n sqrt(n!/m!) x^a L_n^(a)(x^2)
    const double log_scale = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) + a * std::log(std::abs(x));
    const double x_sign = (x < 0 && a % 2 == 1) ? -1.0 : 1.0;
    return sign * x_sign * std::exp(log_scale) * laguerre(n, a, x * x);
}

double dmn(const bath::DiscretizedBath& bath, const MultiIndex& m, const MultiIndex& n) {
    check_modes(bath, m);
    check_modes(bath, n);
    const auto q = bath.q();
    double product = bath::prefactor(bath);
    for (std::size_t k = 0; k < q.size(); ++k) product *= lmn_single(m[k], n[k], q[k]);
    return product;
}

double d0n_closed(const bath::DiscretizedBath& bath, const MultiIndex& n) {
    check_modes(bath, n);
    const auto q = bath.q();
    double product = bath::prefactor(bath);
    for (std::size_t k = 0; k < q.size(); ++k) {
        check_occupation(0, n[k]);
        product *= std::pow(2.0 * q[k], n[k]) / std::sqrt(std::tgamma(n[k] + 1.0));
    }
    return product;
}

Eigen::MatrixXd tunneling_matrix(const bath::DiscretizedBath& bath, const BasisEnumeration& basis) {
    if (basis.mode_count() != bath.mode_count())
        throw DomainError("tunneling_matrix: enumeration and bath mode counts differ");
    const std::size_t modes = basis.mode_count();
    const int side = basis.n_max() + 1;
    const auto q = bath.q();

    std::vector<double> tables(modes * side * side);
    for (std::size_t k = 0; k < modes; ++k)
        for (int a = 0; a < side; ++a)
            for (int b = a; b < side; ++b) {
                const double v = lmn_single(a, b, q[k]);
                tables[(k * side + a) * side + b] = v;
                tables[(k * side + b) * side + a] = v;
            }

    const double pref = bath::prefactor(bath);
    const auto dim = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXd d(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto ni = basis.occupations(static_cast<std::size_t>(i));
        for (Eigen::Index j = i; j < dim; ++j) {
            const auto nj = basis.occupations(static_cast<std::size_t>(j));
            double v = pref;
            for (std::size_t k = 0; k < modes && v != 0.0; ++k)
                v *= tables[(k * side + ni[k]) * side + nj[k]];
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

Eigen::MatrixXd displacement_matrix(double q, std::size_t dim, std::size_t buffer) {
    if (dim < 1) throw DomainError("displacement_matrix: dim must be >= 1");
    if (!std::isfinite(q)) throw DomainError("displacement_matrix: q must be finite");
    Eigen::MatrixXd block = expm_block(q, dim + buffer, dim);
    if (q == 0.0) return block;
    const Eigen::MatrixXd wider = expm_block(q, dim + 2 * buffer + 1, dim);
    const double leak = (block - wider).cwiseAbs().maxCoeff();
    if (leak > 1e-10)
        throw AccuracyError("displacement_matrix: truncation leakage " + std::to_string(leak) +
                            " exceeds 1e-10; increase the buffer");
    return wider;
}

int parity_phase(const MultiIndex& n) { return (n.total() % 2 == 0) ? 1 : -1; }

}  // namespace sbparity::fock
