#include "sbparity/bath.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sbparity/errors.hpp"

namespace sbparity::bath {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

// 1 - Lambda^(-p), accurate when p ln(Lambda) is small.
double one_minus_inverse_power(double Lambda, double p) {
    return -std::expm1(-p * std::log(Lambda));
}

Rational pow_int(const Rational& base, long exponent) {
    Rational result = 1;
    Rational factor = exponent >= 0 ? base : Rational(1) / base;
    for (long e = exponent >= 0 ? exponent : -exponent; e > 0; e >>= 1) {
        if (e & 1) result *= factor;
        factor *= factor;
    }
    return result;
}

bool is_positive_integer(const Rational& x) {
    return x > 0 && denominator(x) == 1;
}

}  // namespace

void BathSpec::validate() const {
    require(std::isfinite(s) && s > 0, "bath.s must be a finite positive number");
    require(std::isfinite(alpha) && alpha >= 0, "bath.alpha must be finite and >= 0");
    require(std::isfinite(omega_c) && omega_c > 0, "bath.omega_c must be finite and > 0");
    require(std::isfinite(omega1) && omega1 > 0 && omega1 < omega_c,
            "bath.omega1 must satisfy 0 < omega1 < omega_c");
}

void DiscretizationSpec::validate() const {
    require(std::isfinite(Lambda) && Lambda > 1, "discretization.Lambda must be > 1");
    require(N >= 0, "discretization.N must be >= 0");
}

std::string_view to_string(Convention c) {
    return c == Convention::MeanOmega ? "mean-omega" : "paper-quarter";
}

std::optional<Convention> parse_convention(std::string_view text) {
    if (text == "mean-omega") return Convention::MeanOmega;
    if (text == "paper-quarter") return Convention::PaperQuarter;
    return std::nullopt;
}

DiscretizedBath::DiscretizedBath(std::vector<double> omega, std::vector<double> lambda)
    : omega_(std::move(omega)), lambda_(std::move(lambda)) {
    require(omega_.size() == lambda_.size(), "omega and lambda lists differ in length");
    q_.reserve(omega_.size());
    for (std::size_t k = 0; k < omega_.size(); ++k) {
        require(std::isfinite(omega_[k]) && omega_[k] > 0, "mode frequencies must be positive");
        require(std::isfinite(lambda_[k]), "mode couplings must be finite");
        q_.push_back(lambda_[k] / omega_[k]);
    }
}

DiscretizedBath DiscretizedBath::from_displacements(std::vector<double> omega, std::vector<double> q) {
    require(omega.size() == q.size(), "omega and q lists differ in length");
    std::vector<double> lambda(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) lambda[k] = q[k] * omega[k];
    DiscretizedBath bath(std::move(omega), std::move(lambda));
    // Keep the caller's q exactly rather than the round trip (q * omega) / omega.
    bath.q_ = std::move(q);
    return bath;
}

double DiscretizedBath::sum_q_squared() const noexcept {
    return std::transform_reduce(q_.begin(), q_.end(), q_.begin(), 0.0);
}

double DiscretizedBath::reorganization_energy() const noexcept {
    double e = 0.0;
    for (std::size_t k = 0; k < q_.size(); ++k) e += omega_[k] * q_[k] * q_[k];
    return e;
}

double spectral_density(const BathSpec& spec, double omega) {
    spec.validate();
    if (!(omega > 0 && omega < spec.omega_c))
        throw DomainError("spectral_density: omega must lie in (0, omega_c)");
    return 2.0 * std::numbers::pi * spec.alpha * std::pow(spec.omega_c, 1.0 - spec.s) *
           std::pow(omega, spec.s);
}

double beta1(const BathSpec& spec) {
    spec.validate();
    const double log_ratio = std::log(spec.omega_c / spec.omega1);
    if (spec.s == 1.0) return log_ratio;
    if (spec.s > 1.0 && spec.omega1 <= 1e-12 * spec.omega_c) return 1.0 / (spec.s - 1.0);
    // [(omega_c/omega1)^(1-s) - 1] / (1-s), the exact integral from omega1 for any s != 1
    const double e = 1.0 - spec.s;
    return std::expm1(e * log_ratio) / e;
}

double sum_q_squared_continuous(const BathSpec& spec) {
    return 2.0 * spec.alpha * beta1(spec);
}

double beta0(double s, double Lambda) {
    require(s > 0 && Lambda > 1, "beta0 requires s > 0 and Lambda > 1");
    const double a = one_minus_inverse_power(Lambda, s + 1.0);
    const double b = one_minus_inverse_power(Lambda, s + 2.0);
    return (s + 2.0) * (s + 2.0) * a * a * a / ((s + 1.0) * (s + 1.0) * (s + 1.0) * b * b);
}

double beta2(double s, double Lambda, int N) {
    require(N >= 0, "beta2 requires N >= 0");
    const double b0 = beta0(s, Lambda);
    if (s == 1.0) return 0.25 * b0 * (N + 1);
    const double x = (1.0 - s) * std::log(Lambda);
    return 0.25 * b0 * std::expm1(x * (N + 1)) / std::expm1(x);
}

std::optional<Rational> beta0_exact(const Rational& s, const Rational& Lambda) {
    require(Lambda > 1, "beta0 requires Lambda > 1");
    if (!is_positive_integer(s)) return std::nullopt;
    const long p = numerator(s).convert_to<long>();
    const Rational a = 1 - pow_int(Lambda, -(p + 1));
    const Rational b = 1 - pow_int(Lambda, -(p + 2));
    const Rational s2 = s + 2;
    const Rational s1 = s + 1;
    return s2 * s2 * a * a * a / (s1 * s1 * s1 * b * b);
}

std::optional<Rational> beta2_exact(const Rational& s, const Rational& Lambda, int N) {
    require(N >= 0, "beta2 requires N >= 0");
    auto b0 = beta0_exact(s, Lambda);
    if (!b0) return std::nullopt;
    if (s == 1) return *b0 * (N + 1) / 4;
    const long p = numerator(s).convert_to<long>();
    const Rational r = pow_int(Lambda, 1 - p);
    return *b0 * (pow_int(r, N + 1) - 1) / (r - 1) / 4;
}

double beta2_best(double s, double Lambda, int N) {
    if (s > 0 && std::floor(s) == s && std::isfinite(Lambda) && Lambda > 1) {
        if (auto exact = beta2_exact(Rational(s), Rational(Lambda), N))
            return exact->convert_to<double>();
    }
    return beta2(s, Lambda, N);
}

DiscretizedBath discretize(const BathSpec& spec, const DiscretizationSpec& disc) {
    spec.validate();
    disc.validate();
    const double c = disc.convention == Convention::PaperQuarter ? 0.25 : 1.0;
    const double s = spec.s;
    const double log_lambda = std::log(disc.Lambda);
    const double log_wc = std::log(spec.omega_c);
    const double tail1 = one_minus_inverse_power(disc.Lambda, s + 1.0);
    const double tail2 = one_minus_inverse_power(disc.Lambda, s + 2.0);

    std::vector<double> omega(disc.N + 1);
    std::vector<double> lambda(disc.N + 1);
    for (int k = 0; k <= disc.N; ++k) {
        const double log_upper = log_wc - k * log_lambda;
        const double upper = std::exp(log_upper);
        // integral of J over I_k divided by pi
        const double weight = 2.0 * spec.alpha * std::exp((1.0 - s) * log_wc + (s + 1.0) * log_upper) *
                              tail1 / (s + 1.0);
        omega[k] = upper * (s + 1.0) / (s + 2.0) * tail2 / tail1;
        lambda[k] = std::sqrt(c * weight);
    }
    return DiscretizedBath(std::move(omega), std::move(lambda));
}

double prefactor(const DiscretizedBath& bath) {
    return std::exp(-2.0 * bath.sum_q_squared());
}

}  // namespace sbparity::bath
