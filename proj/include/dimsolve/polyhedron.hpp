#pragma once

#include "dimsolve/linexpr.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimsolve {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Feasibility { Unknown, Feasible, Infeasible };

/// Conjunction of atomic constraints over an ordered list of integer
/// variables (a convex polyhedron in constraint form, read over the
/// rationals with integer tightening).
///
/// Constructors normalize: constraints are merged per direction, kept in
/// canonical order (equalities first) and feasibility is decided. An
/// infeasible polyhedron holds no constraints, only the Infeasible flag.
class Polyhedron {
public:
    Polyhedron() = default;
    explicit Polyhedron(std::vector<std::string> dims);
    Polyhedron(std::vector<std::string> dims, std::vector<AtomicConstraint> constraints);

    static Polyhedron universe(std::vector<std::string> dims) { return Polyhedron(std::move(dims)); }
    static Polyhedron empty(std::vector<std::string> dims);
    /// Dimensions are the variables that occur, in name order.
    static Polyhedron over(std::vector<AtomicConstraint> constraints);

    const std::vector<std::string>& dims() const { return dims_; }
    const std::vector<AtomicConstraint>& constraints() const { return constraints_; }
    Feasibility feasibility() const { return flag_; }
    bool is_empty() const { return flag_ == Feasibility::Infeasible; }
    bool is_universe() const { return flag_ != Feasibility::Infeasible && constraints_.empty(); }
    bool has_dim(const std::string& v) const;

    /// Conjoins a constraint; its variables must be dimensions.
    void add(const AtomicConstraint& c);
    void add_all(std::span<const AtomicConstraint> cs);
    /// Appends dimensions not yet present.
    void add_dims(std::span<const std::string> vars);

    /// Renames dimensions and constraint variables together.
    Polyhedron renamed(const std::map<std::string, std::string>& renaming) const;
    bool contains(const std::map<std::string, Rational>& point) const;

    bool operator==(const Polyhedron&) const = default;

private:
    void normalize();

    std::vector<std::string> dims_;
    std::vector<AtomicConstraint> constraints_;
    Feasibility flag_ = Feasibility::Feasible;
};

bool sat(const Polyhedron& c);
/// Every point of `c1` satisfies `c2`; requires dims(c2) to be a subset of dims(c1).
bool entails(const Polyhedron& c1, const Polyhedron& c2);
bool entails(const Polyhedron& c, const AtomicConstraint& a);
bool equivalent(const Polyhedron& a, const Polyhedron& b);

/// Exact existential projection onto `keep` (Fourier-Motzkin).
Polyhedron project(const Polyhedron& c, std::span<const std::string> keep);
/// Intersection; dimensions are the union, `a` first.
Polyhedron meet(const Polyhedron& a, const Polyhedron& b);
/// Closed convex hull, through the lifted two-copy encoding.
Polyhedron hull(const Polyhedron& a, const Polyhedron& b);
/// Standard widening: the constraints of `a` (equalities split into their
/// two halves) that `b` entails.
Polyhedron widen(const Polyhedron& a, const Polyhedron& b);
/// `widen` plus every constraint of `b` that can replace some constraint of
/// `a` without changing `a` (equalities of both split into halves). Keeps
/// relations that `a` implies without stating them.
Polyhedron widen_h79(const Polyhedron& a, const Polyhedron& b);
/// Minimal equivalent form: implicit equalities made explicit, equalities in
/// echelon form with their pivots substituted out of the inequalities, and
/// every constraint implied by the remaining ones removed.
Polyhedron simplify(const Polyhedron& c);

std::string to_string(const Polyhedron& c);

}  // namespace dimsolve
