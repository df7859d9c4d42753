#include "sbparity/rational_polynomial.hpp"

#include <numeric>
#include <sstream>

#include "sbparity/errors.hpp"

namespace sbparity::algebra {

SymbolMonomial SymbolMonomial::symbol(const std::string& name, int power) {
    SymbolMonomial m;
    if (power != 0) m.powers_[name] = power;
    return m;
}

int SymbolMonomial::power_of(const std::string& name) const {
    auto it = powers_.find(name);
    return it == powers_.end() ? 0 : it->second;
}

SymbolMonomial SymbolMonomial::operator*(const SymbolMonomial& other) const {
    SymbolMonomial out = *this;
    for (const auto& [name, power] : other.powers_) {
        const int p = (out.powers_[name] += power);
        if (p == 0) out.powers_.erase(name);
    }
    return out;
}

std::string SymbolMonomial::to_string() const {
    if (powers_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, power] : powers_) {
        if (!first) os << '*';
        first = false;
        os << name;
        if (power != 1) os << '^' << power;
    }
    return os.str();
}

SymbolicCoefficient::SymbolicCoefficient(const Rational& value) {
    if (value != 0) terms_.emplace(SymbolMonomial{}, value);
}

SymbolicCoefficient::SymbolicCoefficient(const Rational& scale, const SymbolMonomial& monomial) {
    if (scale != 0) terms_.emplace(monomial, scale);
}

bool SymbolicCoefficient::is_rational() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational SymbolicCoefficient::rational_value() const {
    if (!is_rational()) throw DomainError("coefficient depends on formal symbols: " + to_string());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void SymbolicCoefficient::accumulate(const SymbolMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymbolicCoefficient SymbolicCoefficient::operator+(const SymbolicCoefficient& other) const {
    SymbolicCoefficient out = *this;
    for (const auto& [m, c] : other.terms_) out.accumulate(m, c);
    return out;
}

SymbolicCoefficient SymbolicCoefficient::operator-() const {
    SymbolicCoefficient out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

SymbolicCoefficient SymbolicCoefficient::operator-(const SymbolicCoefficient& other) const {
    return *this + (-other);
}

SymbolicCoefficient SymbolicCoefficient::operator*(const SymbolicCoefficient& other) const {
    SymbolicCoefficient out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_) out.accumulate(ma * mb, ca * cb);
    return out;
}

std::string SymbolicCoefficient::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (m.is_one()) {
            os << c;
        } else {
            if (c != 1) os << c << '*';
            os << m.to_string();
        }
    }
    return os.str();
}

RationalPolynomial RationalPolynomial::constant(std::size_t variables, const SymbolicCoefficient& c) {
    RationalPolynomial p(variables);
    p.accumulate(Exponent(variables, 0), c);
    return p;
}

RationalPolynomial RationalPolynomial::variable(std::size_t variables, std::size_t k) {
    if (k >= variables) throw DomainError("variable index out of range");
    Exponent e(variables, 0);
    e[k] = 1;
    return monomial(e, Rational(1));
}

RationalPolynomial RationalPolynomial::monomial(const Exponent& exponent, const SymbolicCoefficient& c) {
    for (int v : exponent)
        if (v < 0) throw DomainError("polynomial exponents must be non-negative");
    RationalPolynomial p(exponent.size());
    p.accumulate(exponent, c);
    return p;
}

int RationalPolynomial::degree() const noexcept {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

SymbolicCoefficient RationalPolynomial::coefficient(const Exponent& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? SymbolicCoefficient{} : it->second;
}

SymbolicCoefficient RationalPolynomial::constant_term() const {
    return coefficient(Exponent(vars_, 0));
}

RationalPolynomial RationalPolynomial::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != vars_) throw DomainError("permutation has the wrong length");
    std::vector<bool> seen(vars_, false);
    for (std::size_t p : perm) {
        if (p >= vars_ || seen[p]) throw DomainError("not a permutation");
        seen[p] = true;
    }
    RationalPolynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponent moved(vars_, 0);
        for (std::size_t k = 0; k < vars_; ++k) moved[perm[k]] = e[k];
        out.accumulate(moved, c);
    }
    return out;
}

void RationalPolynomial::accumulate(const Exponent& e, const SymbolicCoefficient& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void RationalPolynomial::check_compatible(const RationalPolynomial& other) const {
    if (other.vars_ != vars_) throw DomainError("polynomials over different variable sets");
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& other) const {
    RationalPolynomial out = *this;
    out += other;
    return out;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) accumulate(e, c);
    return *this;
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& other) const {
    return *this + other * SymbolicCoefficient(Rational(-1));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& other) const {
    check_compatible(other);
    RationalPolynomial out(vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : other.terms_) {
            Exponent e(vars_);
            for (std::size_t k = 0; k < vars_; ++k) e[k] = ea[k] + eb[k];
            out.accumulate(e, ca * cb);
        }
    return out;
}

RationalPolynomial RationalPolynomial::operator*(const SymbolicCoefficient& c) const {
    RationalPolynomial out(vars_);
    for (const auto& [e, coeff] : terms_) out.accumulate(e, coeff * c);
    return out;
}

std::string RationalPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.to_string() << ')';
        for (std::size_t k = 0; k < vars_; ++k) {
            if (e[k] == 0) continue;
            os << "*q" << (k + 1);
            if (e[k] != 1) os << '^' << e[k];
        }
    }
    return os.str();
}

}  // namespace sbparity::algebra
