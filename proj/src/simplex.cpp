// Feasibility of a row system by the bounded-variable simplex used in
// SMT arithmetic solvers: every row gets a slack s_i = coef_i . x whose
// bounds come from the constant, the original variables are free. Strict
// bounds use values of the form r + d*delta for an infinitesimal delta.

#include "row_system.hpp"

#include <optional>

namespace dimsolve::detail {

namespace {

struct DeltaValue {
    mpq_class real;
    mpq_class delta;

    friend bool operator<(const DeltaValue& a, const DeltaValue& b) {
        return a.real < b.real || (a.real == b.real && a.delta < b.delta);
    }
    friend bool operator>(const DeltaValue& a, const DeltaValue& b) { return b < a; }
    DeltaValue& operator+=(const DeltaValue& o) {
        real += o.real;
        delta += o.delta;
        return *this;
    }
    friend DeltaValue operator-(const DeltaValue& a, const DeltaValue& b) { return {a.real - b.real, a.delta - b.delta}; }
    friend DeltaValue operator*(const DeltaValue& a, const mpq_class& k) { return {a.real * k, a.delta * k}; }
};

class Tableau {
public:
    explicit Tableau(const RowSystem& sys) : n_(sys.num_vars), m_(sys.rows.size()) {
        const std::size_t total = n_ + m_;
        rows_.assign(m_, std::vector<mpq_class>(total));
        lower_.resize(total);
        upper_.resize(total);
        value_.resize(total);
        row_of_.assign(total, -1);
        basic_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const Row& r = sys.rows[i];
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = r.coef[j];
            const std::size_t s = n_ + i;
            basic_[i] = s;
            row_of_[s] = static_cast<long>(i);
            DeltaValue bound{mpq_class(-r.constant), 0};
            if (r.kind == RowKind::Lt) bound.delta = -1;
            upper_[s] = bound;
            if (r.kind == RowKind::Eq) lower_[s] = bound;
        }
    }

    bool check() {
        for (;;) {
            std::optional<std::size_t> violated;
            for (std::size_t r = 0; r < m_; ++r) {
                std::size_t b = basic_[r];
                if (out_of_bounds(b) && (!violated || b < *violated)) violated = b;
            }
            if (!violated) return true;
            const std::size_t b = *violated;
            const std::size_t r = static_cast<std::size_t>(row_of_[b]);
            const bool increase = lower_[b] && value_[b] < *lower_[b];
            const DeltaValue target = increase ? *lower_[b] : *upper_[b];

            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < n_ + m_ && !entering; ++j) {
                if (row_of_[j] >= 0) continue;
                const mpq_class& a = rows_[r][j];
                if (a == 0) continue;
                bool up = (a > 0) == increase;
                if (up ? can_increase(j) : can_decrease(j)) entering = j;
            }
            if (!entering) return false;
            pivot_and_update(r, b, *entering, target);
        }
    }

    // Real parts of the original variables after a successful check.
    std::vector<mpq_class> point() const {
        std::vector<mpq_class> out;
        for (std::size_t j = 0; j < n_; ++j) out.push_back(value_[j].real);
        return out;
    }

private:
    bool out_of_bounds(std::size_t v) const {
        return (lower_[v] && value_[v] < *lower_[v]) || (upper_[v] && value_[v] > *upper_[v]);
    }
    bool can_increase(std::size_t v) const { return !upper_[v] || value_[v] < *upper_[v]; }
    bool can_decrease(std::size_t v) const { return !lower_[v] || value_[v] > *lower_[v]; }

    void pivot_and_update(std::size_t r, std::size_t leaving, std::size_t entering, const DeltaValue& target) {
        const mpq_class a = rows_[r][entering];
        const DeltaValue theta = (target - value_[leaving]) * mpq_class(1 / a);
        value_[entering] += theta;
        for (std::size_t r2 = 0; r2 < m_; ++r2) {
            const mpq_class& c = rows_[r2][entering];
            if (c != 0) value_[basic_[r2]] += theta * c;
        }

        // leaving = a*entering + rest  =>  entering = (leaving - rest) / a
        std::vector<mpq_class>& row = rows_[r];
        for (auto& c : row) c = -c / a;
        row[entering] = 0;
        row[leaving] = 1 / a;
        for (std::size_t r2 = 0; r2 < m_; ++r2) {
            if (r2 == r) continue;
            const mpq_class c = rows_[r2][entering];
            if (c == 0) continue;
            std::vector<mpq_class>& other = rows_[r2];
            for (std::size_t j = 0; j < other.size(); ++j)
                if (row[j] != 0) other[j] += c * row[j];
            other[entering] = 0;
        }
        basic_[r] = entering;
        row_of_[entering] = static_cast<long>(r);
        row_of_[leaving] = -1;
    }

    std::size_t n_, m_;
    std::vector<std::vector<mpq_class>> rows_;
    std::vector<std::optional<DeltaValue>> lower_, upper_;
    std::vector<DeltaValue> value_;
    std::vector<long> row_of_;
    std::vector<std::size_t> basic_;
};

// Substitutes away equalities with a unit coefficient, which keeps the
// integer solution set of the other variables, and renormalizes so that
// divisibility conflicts such as 2y - 2z = 3 surface. False on a
// contradiction.
bool presolve(RowSystem& sys) {
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < sys.rows.size() && !again; ++i) {
            const Row eq = sys.rows[i];
            if (eq.kind != RowKind::Eq) continue;
            std::size_t j = 0;
            while (j < eq.coef.size() && abs(eq.coef[j]) != 1) ++j;
            if (j == eq.coef.size()) continue;
            std::vector<Row> rest;
            for (std::size_t r = 0; r < sys.rows.size(); ++r) {
                if (r == i) continue;
                Row row = sys.rows[r];
                if (row.coef[j] != 0) {
                    const mpz_class f = row.coef[j] * eq.coef[j];  // eq.coef[j] is +-1
                    for (std::size_t v = 0; v < row.coef.size(); ++v) row.coef[v] -= f * eq.coef[v];
                    row.constant -= f * eq.constant;
                }
                switch (normalize_row(row, true)) {
                    case RowStatus::Contradiction: return false;
                    case RowStatus::Trivial: break;
                    case RowStatus::Ok: rest.push_back(std::move(row)); break;
                }
            }
            sys.rows = std::move(rest);
            again = true;
        }
    }
    return true;
}

// Depth-first branch and bound on the first fractional variable. Running out
// of `budget` answers "feasible", which only costs precision where callers
// use infeasibility as a proof.
bool integer_feasible(const RowSystem& sys, int& budget) {
    if (sys.contradiction) return false;
    if (sys.rows.empty()) return true;
    Tableau t(sys);
    if (!t.check()) return false;
    const auto x = t.point();
    std::size_t j = 0;
    while (j < x.size() && x[j].get_den() == 1) ++j;
    if (j == x.size()) return true;
    if (--budget <= 0) return true;
    mpz_class lo;
    mpz_fdiv_q(lo.get_mpz_t(), x[j].get_num_mpz_t(), x[j].get_den_mpz_t());
    for (int side = 0; side < 2; ++side) {
        RowSystem branch = sys;
        Row r;
        r.coef.assign(sys.num_vars, 0);
        if (side == 0) {
            r.coef[j] = 1;  // x_j - lo <= 0
            r.constant = -lo;
        } else {
            r.coef[j] = -1;  // lo + 1 - x_j <= 0
            r.constant = lo + 1;
        }
        branch.add(std::move(r));
        if (integer_feasible(branch, budget)) return true;
    }
    return false;
}

}  // namespace

bool feasible(const RowSystem& sys) {
    if (sys.contradiction) return false;
    if (sys.rows.empty()) return true;
    if (sys.integral) {
        RowSystem reduced = sys;
        if (!presolve(reduced)) return false;
        int budget = 64;
        return integer_feasible(reduced, budget);
    }
    Tableau t(sys);
    return t.check();
}

}  // namespace dimsolve::detail
