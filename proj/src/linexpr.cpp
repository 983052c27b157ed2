#include "dimsolve/linexpr.hpp"

#include <sstream>

namespace dimsolve {

LinExpr LinExpr::var(const std::string& name, Rational coef) {
    LinExpr e;
    e.add_term(name, coef);
    return e;
}

Rational LinExpr::coeff(const std::string& name) const {
    auto it = terms_.find(name);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LinExpr::add_term(const std::string& name, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.emplace(name, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
    for (const auto& [v, c] : other.terms_) add_term(v, c);
    constant_ += other.constant_;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
    for (const auto& [v, c] : other.terms_) add_term(v, -c);
    constant_ -= other.constant_;
    return *this;
}

LinExpr& LinExpr::operator*=(const Rational& k) {
    if (k == 0) {
        terms_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [v, c] : terms_) c *= k;
    constant_ *= k;
    return *this;
}

LinExpr LinExpr::renamed(const std::map<std::string, std::string>& renaming) const {
    LinExpr out(constant_);
    for (const auto& [v, c] : terms_) {
        auto it = renaming.find(v);
        out.add_term(it == renaming.end() ? v : it->second, c);
    }
    return out;
}

Rational LinExpr::evaluate(const std::map<std::string, Rational>& point) const {
    Rational sum = constant_;
    for (const auto& [v, c] : terms_) {
        auto it = point.find(v);
        if (it == point.end()) throw std::out_of_range("unbound variable " + v);
        sum += c * it->second;
    }
    return sum;
}

void LinExpr::collect_vars(std::set<std::string>& out) const {
    for (const auto& [v, c] : terms_) out.insert(v);
}

bool LinExpr::operator<(const LinExpr& other) const {
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    for (; a != terms_.end() && b != other.terms_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
    }
    if (a != terms_.end() || b != other.terms_.end()) return b != other.terms_.end();
    return constant_ < other.constant_;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

AtomicConstraint::AtomicConstraint(const LinExpr& lhs, Rel rel, const LinExpr& rhs) {
    switch (rel) {
        case Rel::Eq: expr_ = lhs - rhs; rel_ = Rel::Eq; break;
        case Rel::Le: expr_ = lhs - rhs; rel_ = Rel::Le; break;
        case Rel::Lt: expr_ = lhs - rhs; rel_ = Rel::Lt; break;
        case Rel::Ge: expr_ = rhs - lhs; rel_ = Rel::Le; break;
        case Rel::Gt: expr_ = rhs - lhs; rel_ = Rel::Lt; break;
    }
    normalize();
}

AtomicConstraint AtomicConstraint::contradiction() {
    AtomicConstraint c;
    c.expr_ = LinExpr(Rational(1));
    c.rel_ = Rel::Le;
    return c;
}

void AtomicConstraint::normalize() {
    // Clear denominators.
    Integer lcm = expr_.constant().get_den();
    for (const auto& [v, c] : expr_.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    expr_ *= Rational(lcm);

    if (rel_ == Rel::Lt) {
        expr_.add_constant(1);
        rel_ = Rel::Le;
    }

    if (expr_.is_constant()) {
        const Rational& k = expr_.constant();
        bool ok = rel_ == Rel::Eq ? k == 0 : k <= 0;
        expr_ = LinExpr(Rational(ok ? 0 : 1));
        rel_ = Rel::Le;
        return;
    }

    Integer g = 0;
    for (const auto& [v, c] : expr_.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    Integer k = expr_.constant().get_num();
    if (rel_ == Rel::Eq) {
        if (k % g != 0) {
            *this = contradiction();
            return;
        }
        expr_ *= Rational(Integer(1), g);
        if (expr_.terms().begin()->second < 0) expr_ *= Rational(-1);
    } else {
        // sum(a x) + k <= 0  <=>  sum(a/g x) <= floor(-k/g)
        Integer bound = floor_div(-k, g);
        LinExpr scaled;
        for (const auto& [v, c] : expr_.terms()) scaled.add_term(v, c / g);
        scaled.add_constant(Rational(-bound));
        expr_ = std::move(scaled);
    }
}

bool AtomicConstraint::is_contradiction() const {
    return expr_.is_constant() && (rel_ == Rel::Eq ? expr_.constant() != 0 : expr_.constant() > 0);
}

bool AtomicConstraint::is_tautology() const {
    return expr_.is_constant() && !is_contradiction();
}

AtomicConstraint AtomicConstraint::renamed(const std::map<std::string, std::string>& renaming) const {
    AtomicConstraint c;
    c.expr_ = expr_.renamed(renaming);
    c.rel_ = rel_;
    c.normalize();
    return c;
}

bool AtomicConstraint::holds_at(const std::map<std::string, Rational>& point) const {
    Rational v = expr_.evaluate(point);
    return rel_ == Rel::Eq ? v == 0 : v <= 0;
}

std::vector<AtomicConstraint> AtomicConstraint::negations() const {
    // not (e <= 0)  is  e > 0  is  -e < 0
    if (rel_ == Rel::Eq) return {AtomicConstraint(expr_, Rel::Lt, LinExpr()), AtomicConstraint(expr_, Rel::Gt, LinExpr())};
    return {AtomicConstraint(expr_, Rel::Gt, LinExpr())};
}

bool AtomicConstraint::operator<(const AtomicConstraint& other) const {
    if (rel_ != other.rel_) return rel_ == Rel::Eq;
    return expr_ < other.expr_;
}

namespace {

void write_terms(std::ostream& os, const std::map<std::string, Rational>& terms, const Rational& sign) {
    bool first = true;
    for (const auto& [v, c0] : terms) {
        Rational c = c0 * sign;
        if (c < 0) {
            os << '-';
            c = -c;
        } else if (!first) {
            os << '+';
        }
        if (c != 1) os << c << '*';
        os << v;
        first = false;
    }
}

}  // namespace

std::string to_string(const LinExpr& e) {
    std::ostringstream os;
    if (e.is_constant()) {
        os << e.constant();
        return os.str();
    }
    write_terms(os, e.terms(), 1);
    if (e.constant() > 0) os << '+' << e.constant();
    if (e.constant() < 0) os << e.constant();
    return os.str();
}

std::string to_string(const AtomicConstraint& c) {
    std::ostringstream os;
    const LinExpr& e = c.expr();
    if (e.is_constant()) return c.is_contradiction() ? "0>=1" : "0>=0";
    if (c.is_equality()) {
        // sum(a x) + k = 0   printed   sum(a x) = -k
        write_terms(os, e.terms(), 1);
        os << '=' << Rational(-e.constant());
    } else {
        // sum(a x) + k <= 0  printed  -sum(a x) >= k
        write_terms(os, e.terms(), -1);
        os << ">=" << e.constant();
    }
    return os.str();
}

std::string canonical_var(std::size_t i) {
    std::string name(1, static_cast<char>('A' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    return name;
}

std::vector<std::string> canonical_vars(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(canonical_var(i));
    return out;
}

}  // namespace dimsolve
