#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sbparity/rational.hpp"

namespace sbparity::bath {

/// Power-law bath J(omega) = 2 pi alpha omega_c^(1-s) omega^s on (0, omega_c).
///
/// omega1 is the infrared cutoff used by the continuous sum over q_k^2; it
/// must be positive whenever s <= 1 because the integral diverges at zero.
struct BathSpec {
    double s = 1.0;
    double alpha = 0.0;
    double omega_c = 1.0;
    double omega1 = 1e-3;

    /// Throws DomainError naming the offending field.
    void validate() const;
};

enum class Convention {
    MeanOmega,     ///< lambda_k^2 = (1/pi) * integral of J over the bin
    PaperQuarter,  ///< same, scaled by 1/4; sum of q_k^2 equals 2 alpha beta2(N)
};

std::string_view to_string(Convention c);
std::optional<Convention> parse_convention(std::string_view text);

struct DiscretizationSpec {
    double Lambda = 2.0;
    int N = 10;  ///< modes are indexed k = 0..N
    Convention convention = Convention::PaperQuarter;

    void validate() const;
};

/// Immutable list of discrete bath modes with q_k = lambda_k / omega_k.
class DiscretizedBath {
public:
    DiscretizedBath() = default;
    DiscretizedBath(std::vector<double> omega, std::vector<double> lambda);

    /// Builds a bath directly from frequencies and displacements (lambda = q * omega).
    static DiscretizedBath from_displacements(std::vector<double> omega, std::vector<double> q);

    std::size_t mode_count() const noexcept { return omega_.size(); }
    std::span<const double> omega() const noexcept { return omega_; }
    std::span<const double> lambda() const noexcept { return lambda_; }
    std::span<const double> q() const noexcept { return q_; }

    double sum_q_squared() const noexcept;
    /// sum_k omega_k q_k^2; the polaron shift of every displaced level.
    double reorganization_energy() const noexcept;

private:
    std::vector<double> omega_;
    std::vector<double> lambda_;
    std::vector<double> q_;
};

double spectral_density(const BathSpec& spec, double omega);

/// Dimensionless infrared integral: sum_k q_k^2 = 2 alpha beta1 in the continuum.
double beta1(const BathSpec& spec);
double sum_q_squared_continuous(const BathSpec& spec);

double beta0(double s, double Lambda);
double beta2(double s, double Lambda, int N);

/// Exact evaluation; only defined when s is a positive integer, since
/// Lambda^(-s-1) is otherwise irrational.
std::optional<Rational> beta0_exact(const Rational& s, const Rational& Lambda);
std::optional<Rational> beta2_exact(const Rational& s, const Rational& Lambda, int N);

/// beta2 through the exact path when possible, else the floating-point path.
double beta2_best(double s, double Lambda, int N);

/// Logarithmic binning of (0, omega_c] into I_k = [Lambda^-(k+1), Lambda^-k] omega_c.
DiscretizedBath discretize(const BathSpec& spec, const DiscretizationSpec& disc);

/// exp(-2 sum_k q_k^2)
double prefactor(const DiscretizedBath& bath);

}  // namespace sbparity::bath
