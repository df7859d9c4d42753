#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sbparity/rational.hpp"

namespace sbparity::algebra {

/// Product of named formal symbols raised to integer (possibly negative)
/// powers. The empty product is 1.
class SymbolMonomial {
public:
    SymbolMonomial() = default;
    static SymbolMonomial symbol(const std::string& name, int power = 1);

    bool is_one() const noexcept { return powers_.empty(); }
    int power_of(const std::string& name) const;
    const std::map<std::string, int>& powers() const noexcept { return powers_; }

    SymbolMonomial operator*(const SymbolMonomial& other) const;
    auto operator<=>(const SymbolMonomial&) const = default;

    std::string to_string() const;

private:
    std::map<std::string, int> powers_;  // no zero powers stored
};

/// Finite Q-linear combination of symbol monomials.
class SymbolicCoefficient {
public:
    SymbolicCoefficient() = default;
    SymbolicCoefficient(const Rational& value);  // NOLINT: implicit on purpose
    SymbolicCoefficient(const Rational& scale, const SymbolMonomial& monomial);

    bool is_zero() const noexcept { return terms_.empty(); }
    /// True when no formal symbol appears (including the zero coefficient).
    bool is_rational() const noexcept;
    /// Value of a symbol-free coefficient; throws DomainError otherwise.
    Rational rational_value() const;
    std::size_t term_count() const noexcept { return terms_.size(); }
    const std::map<SymbolMonomial, Rational>& terms() const noexcept { return terms_; }

    SymbolicCoefficient operator+(const SymbolicCoefficient& other) const;
    SymbolicCoefficient operator-(const SymbolicCoefficient& other) const;
    SymbolicCoefficient operator-() const;
    SymbolicCoefficient operator*(const SymbolicCoefficient& other) const;
    bool operator==(const SymbolicCoefficient&) const = default;

    std::string to_string() const;

private:
    void accumulate(const SymbolMonomial& m, const Rational& c);

    std::map<SymbolMonomial, Rational> terms_;
};

using Exponent = std::vector<int>;

/// Polynomial in q_1..q_N with SymbolicCoefficient coefficients. Zero
/// coefficients are never stored, so equality is structural.
class RationalPolynomial {
public:
    explicit RationalPolynomial(std::size_t variables = 0) : vars_(variables) {}

    static RationalPolynomial constant(std::size_t variables, const SymbolicCoefficient& c);
    static RationalPolynomial variable(std::size_t variables, std::size_t k);
    static RationalPolynomial monomial(const Exponent& exponent, const SymbolicCoefficient& c);

    std::size_t variables() const noexcept { return vars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const noexcept;
    SymbolicCoefficient coefficient(const Exponent& exponent) const;
    SymbolicCoefficient constant_term() const;
    const std::map<Exponent, SymbolicCoefficient>& terms() const noexcept { return terms_; }

    /// Relabels variables: variable k becomes variable perm[k].
    RationalPolynomial permuted(const std::vector<std::size_t>& perm) const;

    RationalPolynomial operator+(const RationalPolynomial& other) const;
    RationalPolynomial operator-(const RationalPolynomial& other) const;
    RationalPolynomial operator*(const RationalPolynomial& other) const;
    RationalPolynomial operator*(const SymbolicCoefficient& c) const;
    RationalPolynomial& operator+=(const RationalPolynomial& other);
    bool operator==(const RationalPolynomial&) const = default;

    std::string to_string() const;

private:
    void accumulate(const Exponent& e, const SymbolicCoefficient& c);
    void check_compatible(const RationalPolynomial& other) const;

    std::size_t vars_;
    std::map<Exponent, SymbolicCoefficient> terms_;
};

}  // namespace sbparity::algebra
