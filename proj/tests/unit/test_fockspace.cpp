#include <cmath>
#include <set>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "sbparity/errors.hpp"
#include "sbparity/fockspace.hpp"

using namespace sbparity;
using namespace sbparity::fock;

namespace {

// All occupation vectors with total <= n_max in graded lexicographic order,
// generated by brute force over the full hypercube.
std::vector<std::vector<int>> brute_force_basis(std::size_t modes, int n_max) {
    std::vector<std::vector<int>> all;
    std::vector<int> n(modes, 0);
    while (true) {
        int total = 0;
        for (int v : n) total += v;
        if (total <= n_max) all.push_back(n);
        std::size_t k = modes;
        while (k > 0) {
            --k;
            if (++n[k] <= n_max) break;
            n[k] = 0;
            if (k == 0) goto done;
        }
        if (modes == 0) break;
    }
done:
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int v : a) ta += v;
        for (int v : b) tb += v;
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return all;
}

// sum_j (-1)^j sqrt(m! n!) (2q)^(m+n-2j) / ((m-j)! (n-j)! j!) in 50 digits.
double lmn_reference(int m, int n, double q) {
    using F = boost::multiprecision::cpp_bin_float_50;
    auto fact = [](int k) {
        F f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    const F x = 2 * F(q);
    F sum = 0;
    for (int j = 0; j <= std::min(m, n); ++j) {
        const F term = boost::multiprecision::pow(x, m + n - 2 * j) / (fact(m - j) * fact(n - j) * fact(j));
        sum += (j % 2 == 0) ? term : F(-term);
    }
    return static_cast<double>(sum * boost::multiprecision::sqrt(fact(m) * fact(n)));
}

}  // namespace

TEST_CASE("two-mode enumeration order") {
    const auto basis = enumerate_basis(2, 1);
    REQUIRE(basis.dim() == 3);
    CHECK(basis.multi_index_of(0) == MultiIndex{0, 0});
    CHECK(basis.multi_index_of(1) == MultiIndex{0, 1});
    CHECK(basis.multi_index_of(2) == MultiIndex{1, 0});
}

TEST_CASE("enumeration matches brute force and round-trips") {
    for (std::size_t modes : {1u, 2u, 3u, 4u}) {
        for (int n_max : {0, 1, 2, 5}) {
            CAPTURE(modes);
            CAPTURE(n_max);
            const auto basis = enumerate_basis(modes, n_max);
            const auto ref = brute_force_basis(modes, n_max);
            REQUIRE(basis.dim() == ref.size());
            CHECK(basis.dim() == binomial(modes + n_max, modes));
            for (std::size_t i = 0; i < basis.dim(); ++i) {
                const auto n = basis.multi_index_of(i);
                CHECK(std::vector<int>(n.occupations().begin(), n.occupations().end()) == ref[i]);
                CHECK(basis.index_of(n) == i);
                CHECK(basis.total(i) == n.total());
            }
        }
    }
}

TEST_CASE("enumeration limits") {
    CHECK_THROWS_AS(enumerate_basis(2, kMaxOccupation + 1), CapacityError);
    CHECK_THROWS_AS(enumerate_basis(6, 10, 100), CapacityError);
    CHECK(enumerate_basis(6, 10).dim() == 8008);
    const auto basis = enumerate_basis(2, 2);
    CHECK_THROWS_AS(basis.index_of(MultiIndex{1, 2}), DomainError);
    CHECK_THROWS_AS(basis.index_of(MultiIndex{1}), DomainError);
}

TEST_CASE("binomial coefficients") {
    CHECK(binomial(7, 2) == 21);
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(60, 30) == 118264581564861424ull);
    CHECK_THROWS_AS(binomial(200, 100), CapacityError);
}

TEST_CASE("multi-index arithmetic") {
    const MultiIndex a{1, 0, 2};
    const MultiIndex b{0, 3, 0};
    CHECK(a + b == MultiIndex{1, 3, 2});
    CHECK(a.total() == 3);
    CHECK(MultiIndex::vacuum(3) == MultiIndex{0, 0, 0});
    CHECK(parity_phase(a) == -1);
    CHECK(parity_phase(a + b) == 1);
}

TEST_CASE("single-mode tunneling factor against its defining sum in extended precision") {
    for (double q : {0.05, 0.3, -0.45, 0.9, 1.7}) {
        for (int m = 0; m <= 22; ++m) {
            for (int n = 0; n <= 22; ++n) {
                CAPTURE(q);
                CAPTURE(m);
                CAPTURE(n);
                const double expected = lmn_reference(m, n, q);
                const double scale = std::max(1.0, std::abs(expected));
                CHECK(std::abs(lmn_single(m, n, q) - expected) <= 1e-12 * scale);
                CHECK(lmn_single(m, n, q) == doctest::Approx(lmn_single(n, m, q)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("single-mode tunneling factor is a signed displacement element") {
    for (double q : {0.1, 0.6, 1.2})
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; n <= 10; ++n) {
                const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                const double expected = sign * std::exp(2.0 * q * q) * testing::displacement_element(m, n, 2.0 * q);
                CHECK(std::abs(lmn_single(m, n, q) - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
            }
}

TEST_CASE("single-mode tunneling factor at zero displacement is the parity diagonal") {
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) CHECK(lmn_single(m, n, 0.0) == (m == n ? (n % 2 ? -1.0 : 1.0) : 0.0));
    CHECK(lmn_single(0, 0, 0.7) == 1.0);
    CHECK(lmn_single(0, 1, 0.7) == doctest::Approx(1.4));
    CHECK(std::abs(lmn_single(1, 1, 0.5)) < 1e-15);
    CHECK_THROWS_AS(lmn_single(-1, 0, 0.1), DomainError);
    CHECK_THROWS(lmn_single(kMaxOccupation + 1, 0, 0.1));
}

TEST_CASE("tunneling factor at high occupations") {
    for (int m : {25, 30, 45, 60})
        for (int n : {24, 29, 40, 60}) {
            CAPTURE(m);
            CAPTURE(n);
            const double q = 0.8;
            const double expected = lmn_reference(m, n, q);
            CHECK(std::abs(lmn_single(m, n, q) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
        }
}

TEST_CASE("multi-mode elements factorize and the vacuum column has a closed form") {
    const auto bath = bath::DiscretizedBath::from_displacements({1.0, 0.5, 0.25}, {0.2, 0.35, 0.5});
    const auto basis = enumerate_basis(3, 4);
    const auto d = tunneling_matrix(bath, basis);
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const double pref = std::exp(-2.0 * (0.04 + 0.1225 + 0.25));
    for (std::size_t i = 0; i < basis.dim(); i += 3) {
        for (std::size_t j = 0; j < basis.dim(); j += 2) {
            const auto m = basis.multi_index_of(i);
            const auto n = basis.multi_index_of(j);
            double product = pref;
            for (std::size_t k = 0; k < 3; ++k) product *= lmn_single(m[k], n[k], bath.q()[k]);
            CHECK(d(i, j) == doctest::Approx(product).epsilon(1e-14));
            CHECK(dmn(bath, m, n) == doctest::Approx(product).epsilon(1e-14));
        }
        const auto n = basis.multi_index_of(i);
        CHECK(d0n_closed(bath, n) == doctest::Approx(d(0, i)).epsilon(1e-13));
    }
}

TEST_CASE("single-mode tunneling matrix equals D(q) P D(q)^T") {
    const double q = 0.6;
    const std::size_t big = 60;
    const Eigen::MatrixXd dq = displacement_matrix(q, big, 60);
    Eigen::VectorXd parity(big);
    for (std::size_t n = 0; n < big; ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;
    const Eigen::MatrixXd expected = dq * parity.asDiagonal() * dq.transpose();
    const auto bath = bath::DiscretizedBath::from_displacements({1.0}, {q});
    const auto d = tunneling_matrix(bath, enumerate_basis(1, 12));
    CHECK((d - expected.topLeftCorner(13, 13)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("displacement matrix against the Laguerre closed form") {
    for (double q : {0.0, 0.2, -0.7, 1.3}) {
        const auto d = displacement_matrix(q, 24, 40);
        for (int m = 0; m < 24; ++m)
            for (int n = 0; n < 24; ++n) CHECK(std::abs(d(m, n) - testing::displacement_element(m, n, q)) < 1e-12);
        // leading columns are orthonormal; the last columns lose weight past the cut
        const Eigen::MatrixXd gram = d.leftCols(4).transpose() * d.leftCols(4);
        CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
        if (q != 0.0) CHECK(d.col(23).norm() < 1.0 - 1e-8);
    }
    CHECK_THROWS_AS(displacement_matrix(6.0, 4, 2), AccuracyError);
    CHECK_THROWS_AS(displacement_matrix(0.1, 0), DomainError);
}
