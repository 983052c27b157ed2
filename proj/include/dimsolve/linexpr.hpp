#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimsolve {

using Rational = mpq_class;
using Integer = mpz_class;

/// Linear expression  sum(coef_i * var_i) + constant  with exact rational
/// coefficients. Zero coefficients are never stored; terms are ordered by
/// variable name.
class LinExpr {
public:
    LinExpr() = default;
    explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}

    static LinExpr var(const std::string& name, Rational coef = 1);

    const std::map<std::string, Rational>& terms() const { return terms_; }
    const Rational& constant() const { return constant_; }
    Rational coeff(const std::string& name) const;

    bool is_constant() const { return terms_.empty(); }

    void add_term(const std::string& name, const Rational& coef);
    void add_constant(const Rational& c) { constant_ += c; }

    LinExpr& operator+=(const LinExpr& other);
    LinExpr& operator-=(const LinExpr& other);
    LinExpr& operator*=(const Rational& k);

    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(LinExpr a, const Rational& k) { return a *= k; }
    LinExpr operator-() const { return *this * Rational(-1); }

    /// Variables not present in `renaming` keep their names.
    LinExpr renamed(const std::map<std::string, std::string>& renaming) const;
    Rational evaluate(const std::map<std::string, Rational>& point) const;
    void collect_vars(std::set<std::string>& out) const;

    bool operator==(const LinExpr&) const = default;
    bool operator<(const LinExpr& other) const;

private:
    std::map<std::string, Rational> terms_;
    Rational constant_;
};

enum class Rel { Eq, Le, Lt, Ge, Gt };

/// Atomic linear constraint in normal form `expr = 0` or `expr <= 0`.
///
/// Variables range over the integers. Normalization clears denominators,
/// divides by the gcd of the variable coefficients and rounds the constant
/// towards the stronger side for inequalities; strict relations become
/// non-strict ones (`e < 0` is `e + 1 <= 0`). An equality whose constant is
/// not divisible by the coefficient gcd, or a constant-only constraint that
/// does not hold, normalizes to the canonical contradiction `1 <= 0`.
/// Equalities are sign-canonical: the first term has a positive coefficient.
class AtomicConstraint {
public:
    /// Builds `lhs rel rhs` and normalizes it.
    AtomicConstraint(const LinExpr& lhs, Rel rel, const LinExpr& rhs);

    static AtomicConstraint eq(const LinExpr& e) { return {e, Rel::Eq, LinExpr()}; }
    static AtomicConstraint le(const LinExpr& e) { return {e, Rel::Le, LinExpr()}; }
    static AtomicConstraint contradiction();

    const LinExpr& expr() const { return expr_; }
    Rel rel() const { return rel_; }
    bool is_equality() const { return rel_ == Rel::Eq; }
    bool is_contradiction() const;
    bool is_tautology() const;

    AtomicConstraint renamed(const std::map<std::string, std::string>& renaming) const;
    bool holds_at(const std::map<std::string, Rational>& point) const;
    void collect_vars(std::set<std::string>& out) const { expr_.collect_vars(out); }

    /// Integer negations: one constraint for `<=`, two for `=`.
    std::vector<AtomicConstraint> negations() const;

    bool operator==(const AtomicConstraint&) const = default;
    bool operator<(const AtomicConstraint& other) const;

private:
    AtomicConstraint() = default;
    void normalize();

    LinExpr expr_;
    Rel rel_ = Rel::Le;
};

std::string to_string(const LinExpr& e);
/// Printed as `L>=c` or `L=c` with integer coefficients, e.g. `-A>=-2`, `A-C=2`.
std::string to_string(const AtomicConstraint& c);

/// Canonical variable name for position i: A..Z, then A1..Z1, A2..
std::string canonical_var(std::size_t i);
std::vector<std::string> canonical_vars(std::size_t n);

}  // namespace dimsolve
