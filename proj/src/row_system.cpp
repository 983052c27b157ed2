#include "row_system.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace dimsolve::detail {

bool Row::is_zero() const {
    return std::all_of(coef.begin(), coef.end(), [](const mpz_class& c) { return c == 0; });
}

namespace {

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class coef_gcd(const Row& row) {
    mpz_class g = 0;
    for (const auto& c : row.coef)
        if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void flip(Row& row) {
    for (auto& c : row.coef) c = -c;
    row.constant = -row.constant;
}

}  // namespace

RowStatus normalize_row(Row& row, bool integral) {
    mpz_class g = coef_gcd(row);
    if (g == 0) {
        const mpz_class& k = row.constant;
        bool holds = row.kind == RowKind::Eq ? k == 0 : row.kind == RowKind::Le ? k <= 0 : k < 0;
        return holds ? RowStatus::Trivial : RowStatus::Contradiction;
    }
    if (integral) {
        if (row.kind == RowKind::Lt) {
            row.constant += 1;
            row.kind = RowKind::Le;
        }
        if (row.kind == RowKind::Eq) {
            if (row.constant % g != 0) return RowStatus::Contradiction;
            row.constant /= g;
        } else {
            row.constant = ceil_div(row.constant, g);
        }
        for (auto& c : row.coef) c /= g;
    } else {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row.constant.get_mpz_t());
        for (auto& c : row.coef) c /= g;
        row.constant /= g;
    }
    if (row.kind == RowKind::Eq) {
        auto first = std::find_if(row.coef.begin(), row.coef.end(), [](const mpz_class& c) { return c != 0; });
        if (*first < 0) flip(row);
    }
    return RowStatus::Ok;
}

void RowSystem::add(Row row) {
    row.coef.resize(num_vars);
    switch (normalize_row(row, integral)) {
        case RowStatus::Trivial: return;
        case RowStatus::Contradiction: contradiction = true; return;
        case RowStatus::Ok: rows.push_back(std::move(row)); return;
    }
}

std::vector<Row> negate_row(const Row& row) {
    Row neg = row;
    flip(neg);
    switch (row.kind) {
        case RowKind::Le: neg.kind = RowKind::Lt; return {neg};
        case RowKind::Lt: neg.kind = RowKind::Le; return {neg};
        case RowKind::Eq: {
            neg.kind = RowKind::Lt;
            Row below = row;
            below.kind = RowKind::Lt;
            return {below, neg};
        }
    }
    return {};
}

namespace {

// A bound on the canonical direction t = d . x, where d has coprime entries
// and a positive leading coefficient.
struct Bound {
    mpq_class value;
    bool strict = false;
};

struct DirectionBounds {
    std::optional<Bound> lower, upper;
};

// Tighter of two upper bounds.
bool tighter_upper(const Bound& a, const Bound& b) {
    return a.value < b.value || (a.value == b.value && a.strict && !b.strict);
}

bool tighter_lower(const Bound& a, const Bound& b) {
    return a.value > b.value || (a.value == b.value && a.strict && !b.strict);
}

Row make_row(const std::vector<mpz_class>& dir, const mpq_class& value, RowKind kind, bool upper) {
    // upper:  q d.x - p  (<= | <) 0 ; lower:  -q d.x + p  (<= | <) 0 ; value = p/q
    Row row;
    row.kind = kind;
    const mpz_class& p = value.get_num();
    const mpz_class& q = value.get_den();
    row.coef.reserve(dir.size());
    for (const auto& c : dir) row.coef.push_back(upper ? mpz_class(c * q) : mpz_class(-c * q));
    row.constant = upper ? mpz_class(-p) : mpz_class(p);
    return row;
}

}  // namespace

void prune(RowSystem& sys) {
    if (sys.contradiction) {
        sys.rows.clear();
        return;
    }
    std::map<std::vector<mpz_class>, DirectionBounds> bounds;
    for (const Row& row : sys.rows) {
        mpz_class g = coef_gcd(row);
        if (g == 0) continue;
        std::vector<mpz_class> dir(row.coef.size());
        auto first = std::find_if(row.coef.begin(), row.coef.end(), [](const mpz_class& c) { return c != 0; });
        mpz_class sign = *first < 0 ? -1 : 1;
        mpz_class scale = g * sign;  // row.coef = scale * dir
        for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = row.coef[i] / scale;
        // scale * t + constant (rel) 0   <=>   t (rel') -constant/scale
        mpq_class value(-row.constant, scale);
        value.canonicalize();
        auto& b = bounds[dir];
        Bound bound{value, row.kind == RowKind::Lt};
        bool is_upper = scale > 0;
        if (row.kind == RowKind::Eq || is_upper)
            if (!b.upper || tighter_upper(bound, *b.upper)) b.upper = bound;
        if (row.kind == RowKind::Eq || !is_upper)
            if (!b.lower || tighter_lower(bound, *b.lower)) b.lower = bound;
    }
    std::vector<Row> eqs, ineqs;
    for (const auto& [dir, b] : bounds) {
        if (b.lower && b.upper) {
            const Bound& lo = *b.lower;
            const Bound& hi = *b.upper;
            if (lo.value > hi.value || (lo.value == hi.value && (lo.strict || hi.strict))) {
                sys.contradiction = true;
                sys.rows.clear();
                return;
            }
            if (lo.value == hi.value) {
                eqs.push_back(make_row(dir, hi.value, RowKind::Eq, true));
                continue;
            }
        }
        if (b.lower) ineqs.push_back(make_row(dir, b.lower->value, b.lower->strict ? RowKind::Lt : RowKind::Le, false));
        if (b.upper) ineqs.push_back(make_row(dir, b.upper->value, b.upper->strict ? RowKind::Lt : RowKind::Le, true));
    }
    sys.rows.clear();
    for (auto* group : {&eqs, &ineqs})
        for (Row& r : *group) sys.add(std::move(r));
}

void remove_redundant(RowSystem& sys) {
    if (sys.contradiction) return;
    std::vector<bool> alive(sys.rows.size(), true);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        RowSystem rest(sys.num_vars, sys.integral);
        for (std::size_t j = 0; j < sys.rows.size(); ++j)
            if (j != i && alive[j]) rest.rows.push_back(sys.rows[j]);
        bool implied = true;
        for (Row& neg : negate_row(sys.rows[i])) {
            RowSystem probe = rest;
            probe.add(std::move(neg));
            if (feasible(probe)) {
                implied = false;
                break;
            }
        }
        if (implied) alive[i] = false;
    }
    std::vector<Row> kept;
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
        if (alive[i]) kept.push_back(std::move(sys.rows[i]));
    sys.rows = std::move(kept);
}

namespace {

RowKind combine_kind(RowKind a, RowKind b) {
    return (a == RowKind::Lt || b == RowKind::Lt) ? RowKind::Lt : RowKind::Le;
}

// a*lhs + b*rhs, both multipliers non-negative unless lhs is an equality.
Row combine(const Row& lhs, const mpz_class& a, const Row& rhs, const mpz_class& b) {
    Row out;
    out.coef.resize(lhs.coef.size());
    for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] = a * lhs.coef[i] + b * rhs.coef[i];
    out.constant = a * lhs.constant + b * rhs.constant;
    return out;
}

}  // namespace

void eliminate(RowSystem& sys, std::size_t var) {
    if (sys.contradiction) return;

    // Equality with the smallest nonzero coefficient on var.
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const Row& r = sys.rows[i];
        if (r.kind != RowKind::Eq || r.coef[var] == 0) continue;
        if (!pivot || abs(r.coef[var]) < abs(sys.rows[*pivot].coef[var])) pivot = i;
    }

    std::vector<Row> old = std::move(sys.rows);
    sys.rows.clear();
    if (pivot) {
        Row eq = old[*pivot];
        if (eq.coef[var] < 0) flip(eq);
        const mpz_class a = eq.coef[var];
        for (std::size_t i = 0; i < old.size(); ++i) {
            if (i == *pivot) continue;
            const Row& r = old[i];
            if (r.coef[var] == 0) {
                sys.add(r);
                continue;
            }
            Row n = combine(r, a, eq, -r.coef[var]);
            n.kind = r.kind;
            sys.add(std::move(n));
        }
    } else {
        std::vector<const Row*> pos, neg;
        for (const Row& r : old) {
            if (r.coef[var] > 0)
                pos.push_back(&r);
            else if (r.coef[var] < 0)
                neg.push_back(&r);
            else
                sys.add(r);
        }
        for (const Row* p : pos) {
            for (const Row* n : neg) {
                Row c = combine(*p, -n->coef[var], *n, p->coef[var]);
                c.kind = combine_kind(p->kind, n->kind);
                sys.add(std::move(c));
                if (sys.contradiction) break;
            }
        }
    }
    if (sys.contradiction) sys.rows.clear();
}

void minimize(RowSystem& sys) {
    prune(sys);
    if (sys.contradiction) return;

    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        if (sys.rows[i].kind != RowKind::Le) continue;
        RowSystem probe = sys;
        probe.rows[i].kind = RowKind::Lt;
        normalize_row(probe.rows[i], probe.integral);
        if (!feasible(probe)) sys.rows[i].kind = RowKind::Eq;
    }

    std::vector<Row> rows = std::move(sys.rows);
    std::vector<bool> is_pivot(rows.size(), false);
    for (std::size_t v = 0; v < sys.num_vars; ++v) {
        std::optional<std::size_t> p;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!is_pivot[i] && rows[i].kind == RowKind::Eq && rows[i].coef[v] != 0) {
                p = i;
                break;
            }
        if (!p) continue;
        is_pivot[*p] = true;
        Row eq = rows[*p];
        if (eq.coef[v] < 0) flip(eq);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == *p || rows[i].coef[v] == 0) continue;
            Row n = combine(rows[i], eq.coef[v], eq, -rows[i].coef[v]);
            n.kind = rows[i].kind;
            rows[i] = std::move(n);
        }
    }
    sys.rows.clear();
    for (Row& r : rows) sys.add(std::move(r));
    prune(sys);
    remove_redundant(sys);
}

void eliminate_except(RowSystem& sys, const std::vector<bool>& keep) {
    std::vector<bool> pending(sys.num_vars);
    for (std::size_t v = 0; v < sys.num_vars; ++v) pending[v] = !keep[v];
    std::size_t limit = std::max<std::size_t>(2 * sys.rows.size(), 24);
    for (;;) {
        if (sys.contradiction) return;
        std::optional<std::size_t> best;
        std::size_t best_cost = 0;
        bool best_eq = false;
        for (std::size_t v = 0; v < sys.num_vars; ++v) {
            if (!pending[v]) continue;
            std::size_t npos = 0, nneg = 0;
            bool in_eq = false;
            for (const Row& r : sys.rows) {
                if (r.coef[v] == 0) continue;
                if (r.kind == RowKind::Eq) in_eq = true;
                (r.coef[v] > 0 ? npos : nneg) += 1;
            }
            std::size_t cost = npos * nneg;
            if (!best || (in_eq && !best_eq) || (in_eq == best_eq && cost < best_cost)) {
                best = v;
                best_cost = cost;
                best_eq = in_eq;
            }
        }
        if (!best) return;
        pending[*best] = false;
        eliminate(sys, *best);
        prune(sys);
        if (sys.rows.size() > limit) {
            remove_redundant(sys);
            limit = std::max<std::size_t>(2 * sys.rows.size(), 24);
        }
    }
}

}  // namespace dimsolve::detail
