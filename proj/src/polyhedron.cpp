#include "dimsolve/polyhedron.hpp"

#include "row_system.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dimsolve {

using detail::Row;
using detail::RowKind;
using detail::RowSystem;

namespace {

using Index = std::map<std::string, std::size_t>;

Index index_of(const std::vector<std::string>& dims) {
    Index idx;
    for (std::size_t i = 0; i < dims.size(); ++i) idx.emplace(dims[i], i);
    return idx;
}

Row to_row(const AtomicConstraint& c, const Index& idx) {
    Row row;
    row.coef.resize(idx.size());
    row.kind = c.is_equality() ? RowKind::Eq : RowKind::Le;
    // Normalized constraints carry integer coefficients.
    for (const auto& [v, k] : c.expr().terms()) {
        auto it = idx.find(v);
        if (it == idx.end()) throw DimensionError("variable " + v + " is not a dimension");
        row.coef[it->second] = k.get_num();
    }
    row.constant = c.expr().constant().get_num();
    return row;
}

RowSystem to_system(const std::vector<AtomicConstraint>& cs, const Index& idx) {
    RowSystem sys(idx.size(), true);
    for (const auto& c : cs) sys.add(to_row(c, idx));
    return sys;
}

AtomicConstraint from_row(const Row& row, const std::vector<std::string>& names) {
    LinExpr e{Rational(row.constant)};
    for (std::size_t i = 0; i < names.size(); ++i)
        if (row.coef[i] != 0) e.add_term(names[i], Rational(row.coef[i]));
    switch (row.kind) {
        case RowKind::Eq: return AtomicConstraint(e, Rel::Eq, LinExpr());
        case RowKind::Le: return AtomicConstraint(e, Rel::Le, LinExpr());
        case RowKind::Lt: break;
    }
    return AtomicConstraint(e, Rel::Lt, LinExpr());
}

std::vector<AtomicConstraint> from_system(const RowSystem& sys, const std::vector<std::string>& names) {
    std::vector<AtomicConstraint> out;
    out.reserve(sys.rows.size());
    for (const Row& r : sys.rows) out.push_back(from_row(r, names));
    return out;
}

void check_subset(const std::vector<std::string>& small, const Polyhedron& big, const char* what) {
    for (const auto& v : small)
        if (!big.has_dim(v)) throw DimensionError(std::string(what) + ": variable " + v + " is not a dimension");
}

// Same set, dimensions reordered as `dims`.
Polyhedron rebase(const Polyhedron& p, const std::vector<std::string>& dims) {
    if (p.is_empty()) return Polyhedron::empty(dims);
    return Polyhedron(dims, p.constraints());
}

}  // namespace

Polyhedron::Polyhedron(std::vector<std::string> dims) : dims_(std::move(dims)) {}

Polyhedron::Polyhedron(std::vector<std::string> dims, std::vector<AtomicConstraint> constraints)
    : dims_(std::move(dims)), constraints_(std::move(constraints)), flag_(Feasibility::Unknown) {
    normalize();
}

Polyhedron Polyhedron::empty(std::vector<std::string> dims) {
    Polyhedron p(std::move(dims));
    p.flag_ = Feasibility::Infeasible;
    return p;
}

Polyhedron Polyhedron::over(std::vector<AtomicConstraint> constraints) {
    std::set<std::string> vars;
    for (const auto& c : constraints) c.collect_vars(vars);
    return Polyhedron({vars.begin(), vars.end()}, std::move(constraints));
}

bool Polyhedron::has_dim(const std::string& v) const {
    return std::find(dims_.begin(), dims_.end(), v) != dims_.end();
}

void Polyhedron::normalize() {
    if (flag_ == Feasibility::Infeasible) {
        constraints_.clear();
        return;
    }
    RowSystem sys = to_system(constraints_, index_of(dims_));
    detail::prune(sys);
    if (sys.contradiction || !detail::feasible(sys)) {
        constraints_.clear();
        flag_ = Feasibility::Infeasible;
        return;
    }
    constraints_ = from_system(sys, dims_);
    std::sort(constraints_.begin(), constraints_.end());
    flag_ = Feasibility::Feasible;
}

void Polyhedron::add(const AtomicConstraint& c) { add_all(std::span(&c, 1)); }

void Polyhedron::add_all(std::span<const AtomicConstraint> cs) {
    if (is_empty()) return;
    constraints_.insert(constraints_.end(), cs.begin(), cs.end());
    flag_ = Feasibility::Unknown;
    normalize();
}

void Polyhedron::add_dims(std::span<const std::string> vars) {
    for (const auto& v : vars)
        if (!has_dim(v)) dims_.push_back(v);
}

Polyhedron Polyhedron::renamed(const std::map<std::string, std::string>& renaming) const {
    Polyhedron out;
    out.flag_ = flag_;
    for (const auto& d : dims_) {
        auto it = renaming.find(d);
        out.dims_.push_back(it == renaming.end() ? d : it->second);
    }
    std::set<std::string> distinct(out.dims_.begin(), out.dims_.end());
    if (distinct.size() != out.dims_.size()) throw DimensionError("renaming merges dimensions");
    for (const auto& c : constraints_) out.constraints_.push_back(c.renamed(renaming));
    std::sort(out.constraints_.begin(), out.constraints_.end());
    return out;
}

bool Polyhedron::contains(const std::map<std::string, Rational>& point) const {
    if (is_empty()) return false;
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const auto& c) { return c.holds_at(point); });
}

bool sat(const Polyhedron& c) { return !c.is_empty(); }

bool entails(const Polyhedron& c, const AtomicConstraint& a) {
    if (c.is_empty()) return true;
    const Index idx = index_of(c.dims());
    const RowSystem base = to_system(c.constraints(), idx);
    for (const auto& neg : a.negations()) {
        RowSystem probe = base;
        probe.add(to_row(neg, idx));
        if (detail::feasible(probe)) return false;
    }
    return true;
}

bool entails(const Polyhedron& c1, const Polyhedron& c2) {
    check_subset(c2.dims(), c1, "entails");
    if (c1.is_empty()) return true;
    if (c2.is_empty()) return false;
    const Index idx = index_of(c1.dims());
    const RowSystem base = to_system(c1.constraints(), idx);
    for (const auto& a : c2.constraints()) {
        for (const auto& neg : a.negations()) {
            RowSystem probe = base;
            probe.add(to_row(neg, idx));
            if (detail::feasible(probe)) return false;
        }
    }
    return true;
}

bool equivalent(const Polyhedron& a, const Polyhedron& b) { return entails(a, b) && entails(b, a); }

Polyhedron project(const Polyhedron& c, std::span<const std::string> keep) {
    std::vector<std::string> kept(keep.begin(), keep.end());
    check_subset(kept, c, "project");
    if (c.is_empty()) return Polyhedron::empty(kept);
    const Index idx = index_of(c.dims());
    RowSystem sys = to_system(c.constraints(), idx);
    std::vector<bool> keep_flag(c.dims().size(), false);
    for (const auto& v : kept) keep_flag[idx.at(v)] = true;
    detail::eliminate_except(sys, keep_flag);
    if (sys.contradiction) return Polyhedron::empty(kept);
    // Columns of eliminated variables are all zero now.
    return Polyhedron(kept, from_system(sys, c.dims()));
}

Polyhedron meet(const Polyhedron& a, const Polyhedron& b) {
    std::vector<std::string> dims = a.dims();
    for (const auto& d : b.dims())
        if (!a.has_dim(d)) dims.push_back(d);
    if (a.is_empty() || b.is_empty()) return Polyhedron::empty(dims);
    std::vector<AtomicConstraint> cs = a.constraints();
    cs.insert(cs.end(), b.constraints().begin(), b.constraints().end());
    return Polyhedron(std::move(dims), std::move(cs));
}

Polyhedron hull(const Polyhedron& a, const Polyhedron& b) {
    if (a.dims().size() != b.dims().size()) throw DimensionError("hull: dimension mismatch");
    check_subset(b.dims(), a, "hull");
    if (a.is_empty()) return rebase(b, a.dims());
    if (b.is_empty()) return a;

    // Columns: x[0..n), y[n..2n), sigma at 2n. The first operand is scaled
    // into (y, sigma), the second into (x - y, 1 - sigma).
    const std::size_t n = a.dims().size();
    const Index idx = index_of(a.dims());
    RowSystem lifted(2 * n + 1, false);
    for (const auto& c : a.constraints()) {
        Row src = to_row(c, idx);
        Row row;
        row.kind = src.kind;
        row.coef.assign(2 * n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) row.coef[n + i] = src.coef[i];
        row.coef[2 * n] = src.constant;
        row.constant = 0;
        lifted.add(std::move(row));
    }
    for (const auto& c : b.constraints()) {
        Row src = to_row(c, idx);
        Row row;
        row.kind = src.kind;
        row.coef.assign(2 * n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            row.coef[i] = src.coef[i];
            row.coef[n + i] = -src.coef[i];
        }
        row.coef[2 * n] = -src.constant;
        row.constant = src.constant;
        lifted.add(std::move(row));
    }
    Row sigma_lo;
    sigma_lo.coef.assign(2 * n + 1, 0);
    sigma_lo.coef[2 * n] = -1;
    lifted.add(sigma_lo);
    Row sigma_hi;
    sigma_hi.coef.assign(2 * n + 1, 0);
    sigma_hi.coef[2 * n] = 1;
    sigma_hi.constant = -1;
    lifted.add(sigma_hi);

    std::vector<bool> keep(2 * n + 1, false);
    std::fill(keep.begin(), keep.begin() + static_cast<long>(n), true);
    detail::eliminate_except(lifted, keep);

    std::vector<std::string> names = a.dims();
    names.resize(2 * n + 1);
    // Integer tightening happens when the rows become atomic constraints.
    Polyhedron out(a.dims(), from_system(lifted, names));
    return simplify(out);
}

Polyhedron widen(const Polyhedron& a, const Polyhedron& b) {
    if (a.is_empty()) return rebase(b, a.dims());
    if (b.is_empty()) return a;
    std::vector<AtomicConstraint> kept;
    for (const auto& c : a.constraints()) {
        if (c.is_equality()) {
            for (const auto& half : {AtomicConstraint::le(c.expr()), AtomicConstraint::le(-c.expr())})
                if (entails(b, half)) kept.push_back(half);
        } else if (entails(b, c)) {
            kept.push_back(c);
        }
    }
    return Polyhedron(a.dims(), std::move(kept));
}

namespace {

std::vector<AtomicConstraint> halves(const std::vector<AtomicConstraint>& cs) {
    std::vector<AtomicConstraint> out;
    for (const auto& c : cs) {
        if (c.is_equality()) {
            out.push_back(AtomicConstraint::le(c.expr()));
            out.push_back(AtomicConstraint::le(-c.expr()));
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

Polyhedron widen_h79(const Polyhedron& a, const Polyhedron& b) {
    if (a.is_empty()) return rebase(b, a.dims());
    if (b.is_empty()) return a;
    const auto as = halves(a.constraints());
    std::vector<AtomicConstraint> kept;
    for (const auto& c : as)
        if (entails(b, c)) kept.push_back(c);
    for (const auto& c : halves(b.constraints())) {
        if (std::find(kept.begin(), kept.end(), c) != kept.end()) continue;
        for (std::size_t i = 0; i < as.size(); ++i) {
            std::vector<AtomicConstraint> swapped;
            for (std::size_t j = 0; j < as.size(); ++j)
                if (j != i) swapped.push_back(as[j]);
            swapped.push_back(c);
            if (entails(Polyhedron(a.dims(), std::move(swapped)), as[i])) {
                kept.push_back(c);
                break;
            }
        }
    }
    return Polyhedron(a.dims(), std::move(kept));
}

Polyhedron simplify(const Polyhedron& c) {
    if (c.is_empty()) return c;
    RowSystem sys = to_system(c.constraints(), index_of(c.dims()));
    detail::minimize(sys);
    if (sys.contradiction) return Polyhedron::empty(c.dims());
    return Polyhedron(c.dims(), from_system(sys, c.dims()));
}

std::string to_string(const Polyhedron& c) {
    if (c.is_empty()) return "0>=1";
    std::string out;
    for (const auto& a : c.constraints()) {
        if (!out.empty()) out += ',';
        out += to_string(a);
    }
    return out;
}

}  // namespace dimsolve
