#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "sbparity/fockspace.hpp"
#include "sbparity/rational.hpp"
#include "sbparity/rational_polynomial.hpp"

// Exact-arithmetic check that the even and odd sector ground energies can
// never coincide for Delta != 0, carried out for a finite number of modes
// and a finite excitation cutoff. Nothing in this header touches floating
// point except lmn_from_exact, which exists for cross-checking.
namespace sbparity::appendix {

inline constexpr std::size_t kMaxDim = 10'000;

enum class Verdict { Holds, Fails };
std::string_view to_string(Verdict v);

/// Name of the formal unknown c^{+/-}_n, e.g. "c+[1,0]".
std::string coefficient_symbol(char sign, const fock::MultiIndex& n);
/// Name of the formal positive unit 1/sqrt(j!) (only for j >= 2).
std::string inverse_sqrt_factorial_symbol(int j);

/// sum_n c^{sign}_n prod_k (2 q_k)^(n_k) / sqrt(n_k!), optionally without the vacuum term.
algebra::RationalPolynomial overlap_polynomial(std::size_t modes, int n_max, char sign, bool include_vacuum);

struct IndependenceDetail {
    Verdict verdict = Verdict::Fails;
    std::size_t basis_dim = 0;
    std::size_t distinct_monomials = 0;
};

/// Case (1): sum_n c_n prod (2q)^n / sqrt(n!) == 0 identically forces every
/// c_n = 0. Holds when each basis state contributes its own q-monomial and
/// every coefficient is a single nonzero multiple of one unknown.
IndependenceDetail analyze_monomial_independence(std::size_t modes, int n_max);
Verdict monomial_independence_check(std::size_t modes, int n_max);

struct ConstantTermWitness {
    Verdict verdict = Verdict::Fails;
    algebra::SymbolicCoefficient left;   ///< constant term of the left side (expected 2)
    algebra::SymbolicCoefficient right;  ///< constant term of the right side (expected 0)
    bool rearrangement_exact = false;    ///< left - right == A+ + A- as polynomials
    std::size_t left_terms = 0;
    std::size_t right_terms = 0;
    int degree = 0;
};

/// Case (2): builds
///   left  = 2 + (1/c+_0) sum_{n != 0} c+_n T_n
///   right = -(1/c-_0) sum_{n != 0} c-_n T_n,   T_n = prod (2q_k)^(n_k)/sqrt(n_k!)
/// from the hypothesis A+ = -A- with A = sum_n c_n T_n / c_0, and compares
/// constant terms.
ConstantTermWitness constant_term_contradiction(std::size_t modes, int n_max);

struct ProofReport {
    std::size_t modes = 0;
    int n_max = 0;
    Verdict case1 = Verdict::Fails;
    Verdict case2 = Verdict::Fails;
    Rational left_constant;
    Rational right_constant;
    std::size_t monomial_count = 0;  ///< distinct q-monomials over the enumeration
    bool rearrangement_exact = false;
    std::string hypothesis = "Delta != 0; c+_0 != 0 and c-_0 != 0 (division by the vacuum coefficients)";

    bool holds() const noexcept { return case1 == Verdict::Holds && case2 == Verdict::Holds; }
    std::string to_text() const;
    /// Single JSON object; keys are stable.
    std::string to_json() const;
};

/// Runs both cases. Throws CapacityError when the enumeration exceeds kMaxDim.
ProofReport verify_appendix(std::size_t modes, int n_max);

/// S = sum_j (-1)^j (2q)^(m+n-2j) / ((m-j)! (n-j)! j!), so L_{m,n} = sqrt(m! n!) * S.
Rational tunneling_sum_exact(int m, int n, const Rational& q);
/// L_{m,n}^2 = m! n! S^2, exact.
Rational lmn_squared_exact(int m, int n, const Rational& q);
/// sign(S) * sqrt(L^2) in double precision, for comparison with fock::lmn_single.
double lmn_from_exact(int m, int n, const Rational& q);

/// Checks L_{0,n}^2 == prod_k (2 q_k)^(2 n_k) / n_k! exactly.
Verdict closed_form_square_check(const fock::MultiIndex& n, std::span<const Rational> q);

}  // namespace sbparity::appendix
