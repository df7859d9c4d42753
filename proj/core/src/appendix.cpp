#include "sbparity/appendix.hpp"

#include <cmath>
#include <sstream>

#include "sbparity/errors.hpp"

namespace sbparity::appendix {

namespace {

using algebra::RationalPolynomial;
using algebra::SymbolicCoefficient;
using algebra::SymbolMonomial;

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational pow_nonneg(const Rational& base, int exponent) {
    Rational r = 1;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

fock::BasisEnumeration checked_basis(std::size_t modes, int n_max) {
    if (modes < 1) throw DomainError("appendix: at least one mode is required");
    if (n_max < 1) throw DomainError("appendix: n_max must be >= 1");
    return fock::enumerate_basis(modes, n_max, kMaxDim);
}

std::string rational_string(const Rational& r) { return r.str(); }

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::Holds ? "holds" : "fails"; }

std::string coefficient_symbol(char sign, const fock::MultiIndex& n) {
    std::ostringstream os;
    os << 'c' << sign << '[';
    for (std::size_t k = 0; k < n.size(); ++k) os << (k ? "," : "") << n[k];
    os << ']';
    return os.str();
}

std::string inverse_sqrt_factorial_symbol(int j) { return "r" + std::to_string(j); }

RationalPolynomial overlap_polynomial(std::size_t modes, int n_max, char sign, bool include_vacuum) {
    const fock::BasisEnumeration basis = checked_basis(modes, n_max);
    RationalPolynomial sum(modes);
    for (std::size_t i = include_vacuum ? 0 : 1; i < basis.dim(); ++i) {
        const fock::MultiIndex n = basis.multi_index_of(i);
        SymbolMonomial symbols = SymbolMonomial::symbol(coefficient_symbol(sign, n));
        for (std::size_t k = 0; k < modes; ++k)
            if (n[k] >= 2) symbols = symbols * SymbolMonomial::symbol(inverse_sqrt_factorial_symbol(n[k]));
        const Rational scale = pow_nonneg(Rational(2), n.total());
        const auto occ = n.occupations();
        sum += RationalPolynomial::monomial(algebra::Exponent(occ.begin(), occ.end()),
                                            SymbolicCoefficient(scale, symbols));
    }
    return sum;
}

IndependenceDetail analyze_monomial_independence(std::size_t modes, int n_max) {
    const fock::BasisEnumeration basis = checked_basis(modes, n_max);
    const RationalPolynomial p = overlap_polynomial(modes, n_max, '+', true);

    IndependenceDetail detail;
    detail.basis_dim = basis.dim();
    detail.distinct_monomials = p.term_count();
    bool each_isolated = true;
    for (const auto& [exponent, coeff] : p.terms()) {
        if (coeff.term_count() != 1) {
            each_isolated = false;
            break;
        }
        const auto& [symbols, scale] = *coeff.terms().begin();
        int unknowns = 0;
        for (const auto& [name, power] : symbols.powers()) {
            if (name.rfind("c", 0) == 0) unknowns += power == 1 ? 1 : 2;
            else if (power <= 0) each_isolated = false;  // units must stay positive factors
        }
        if (unknowns != 1 || scale == 0) each_isolated = false;
    }
    detail.verdict = (each_isolated && detail.distinct_monomials == detail.basis_dim) ? Verdict::Holds
                                                                                      : Verdict::Fails;
    return detail;
}

Verdict monomial_independence_check(std::size_t modes, int n_max) {
    return analyze_monomial_independence(modes, n_max).verdict;
}

ConstantTermWitness constant_term_contradiction(std::size_t modes, int n_max) {
    const fock::MultiIndex vac = fock::MultiIndex::vacuum(modes);
    const SymbolicCoefficient inv_plus0(1, SymbolMonomial::symbol(coefficient_symbol('+', vac), -1));
    const SymbolicCoefficient inv_minus0(1, SymbolMonomial::symbol(coefficient_symbol('-', vac), -1));

    const RationalPolynomial plus_rest = overlap_polynomial(modes, n_max, '+', false);
    const RationalPolynomial minus_rest = overlap_polynomial(modes, n_max, '-', false);

    const RationalPolynomial left =
        RationalPolynomial::constant(modes, Rational(2)) + plus_rest * inv_plus0;
    const RationalPolynomial right = minus_rest * (-inv_minus0);

    // Hypothesis of case (2): A+ = -A-, i.e. A+ + A- = 0.
    const RationalPolynomial a_plus = overlap_polynomial(modes, n_max, '+', true) * inv_plus0;
    const RationalPolynomial a_minus = overlap_polynomial(modes, n_max, '-', true) * inv_minus0;

    ConstantTermWitness w;
    w.left = left.constant_term();
    w.right = right.constant_term();
    w.rearrangement_exact = (left - right) == (a_plus + a_minus);
    w.left_terms = left.term_count();
    w.right_terms = right.term_count();
    w.degree = std::max(left.degree(), right.degree());

    const SymbolicCoefficient mismatch = w.left - w.right;
    const bool contradiction = mismatch.is_rational() && !mismatch.is_zero();
    const bool degree_ok = w.degree <= 2 * n_max * static_cast<int>(modes);
    w.verdict = (contradiction && w.rearrangement_exact && degree_ok) ? Verdict::Holds : Verdict::Fails;
    return w;
}

ProofReport verify_appendix(std::size_t modes, int n_max) {
    const IndependenceDetail case1 = analyze_monomial_independence(modes, n_max);
    const ConstantTermWitness case2 = constant_term_contradiction(modes, n_max);
    ProofReport report;
    report.modes = modes;
    report.n_max = n_max;
    report.case1 = case1.verdict;
    report.case2 = case2.verdict;
    report.monomial_count = case1.distinct_monomials;
    report.rearrangement_exact = case2.rearrangement_exact;
    report.left_constant = case2.left.is_rational() ? case2.left.rational_value() : Rational(-1);
    report.right_constant = case2.right.is_rational() ? case2.right.rational_value() : Rational(-1);
    return report;
}

std::string ProofReport::to_text() const {
    std::ostringstream os;
    os << "Non-degeneracy check, N = " << modes << " modes, n_max = " << n_max << "\n"
       << "  hypothesis: " << hypothesis << "\n"
       << "  case (1) monomial independence: " << to_string(case1) << " (" << monomial_count
       << " distinct monomials)\n"
       << "  case (2) constant-term contradiction: " << to_string(case2) << "\n"
       << "    left constant term:  " << rational_string(left_constant) << "\n"
       << "    right constant term: " << rational_string(right_constant) << "\n"
       << "    rearrangement exact: " << (rearrangement_exact ? "yes" : "no") << "\n"
       << "  verdict: " << (holds() ? "no degeneracy possible" : "NOT ESTABLISHED") << "\n";
    return os.str();
}

std::string ProofReport::to_json() const {
    std::ostringstream os;
    os << "{\"modes\":" << modes << ",\"n_max\":" << n_max << ",\"case1_verdict\":\"" << to_string(case1)
       << "\",\"case2_verdict\":\"" << to_string(case2) << "\",\"witness\":{\"left\":\""
       << rational_string(left_constant) << "\",\"right\":\"" << rational_string(right_constant)
       << "\"},\"monomial_count\":" << monomial_count
       << ",\"rearrangement_exact\":" << (rearrangement_exact ? "true" : "false") << ",\"hypothesis\":\""
       << hypothesis << "\",\"holds\":" << (holds() ? "true" : "false") << "}";
    return os.str();
}

Rational tunneling_sum_exact(int m, int n, const Rational& q) {
    if (m < 0 || n < 0) throw DomainError("occupation numbers must be non-negative");
    const Rational two_q = 2 * q;
    Rational sum = 0;
    for (int j = 0; j <= std::min(m, n); ++j) {
        const Rational term = pow_nonneg(two_q, m + n - 2 * j) /
                              Rational(factorial(m - j) * factorial(n - j) * factorial(j));
        sum += (j % 2 == 0) ? term : Rational(-term);
    }
    return sum;
}

Rational lmn_squared_exact(int m, int n, const Rational& q) {
    const Rational s = tunneling_sum_exact(m, n, q);
    return Rational(factorial(m) * factorial(n)) * s * s;
}

double lmn_from_exact(int m, int n, const Rational& q) {
    const Rational s = tunneling_sum_exact(m, n, q);
    const double magnitude = std::sqrt(lmn_squared_exact(m, n, q).convert_to<double>());
    return s < 0 ? -magnitude : magnitude;
}

Verdict closed_form_square_check(const fock::MultiIndex& n, std::span<const Rational> q) {
    if (n.size() != q.size()) throw DomainError("closed_form_square_check: length mismatch");
    Rational lhs = 1;
    Rational rhs = 1;
    for (std::size_t k = 0; k < n.size(); ++k) {
        lhs *= lmn_squared_exact(0, n[k], q[k]);
        rhs *= pow_nonneg(2 * q[k], 2 * n[k]) / Rational(factorial(n[k]));
    }
    return lhs == rhs ? Verdict::Holds : Verdict::Fails;
}

}  // namespace sbparity::appendix
