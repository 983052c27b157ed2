#pragma once

// Random generators and brute-force oracles shared by the test binaries.

#include "dimsolve/chc.hpp"
#include "dimsolve/model.hpp"
#include "dimsolve/parser.hpp"
#include "dimsolve/polyhedron.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace dimsolve;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(int percent) { return range(1, 100) <= percent; }
    template <class T>
    const T& pick(const std::vector<T>& xs) { return xs[static_cast<std::size_t>(range(0, static_cast<int>(xs.size()) - 1))]; }

    LinExpr expr(const std::vector<std::string>& vars, int coef_bound, int const_bound) {
        LinExpr e(Rational(range(-const_bound, const_bound)));
        for (const auto& v : vars)
            if (chance(70)) e.add_term(v, range(-coef_bound, coef_bound));
        return e;
    }

    // e <= 0, e < 0 or e = 0 with coefficients in [-coef_bound, coef_bound].
    AtomicConstraint constraint(const std::vector<std::string>& vars, int coef_bound = 3, int const_bound = 4) {
        const LinExpr e = expr(vars, coef_bound, const_bound);
        const int r = range(0, 9);
        if (r == 0) return AtomicConstraint(e, Rel::Eq, LinExpr());
        if (r == 1) return AtomicConstraint(e, Rel::Lt, LinExpr());
        return AtomicConstraint(e, Rel::Le, LinExpr());
    }

    Polyhedron polyhedron(const std::vector<std::string>& vars, int max_constraints, int coef_bound = 3, int const_bound = 4) {
        std::vector<AtomicConstraint> cs;
        const int n = range(0, max_constraints);
        for (int i = 0; i < n; ++i) cs.push_back(constraint(vars, coef_bound, const_bound));
        return Polyhedron(vars, cs);
    }

    // Up to 4 predicates of arity 1 or 2, up to 3 body atoms per clause,
    // coefficients in [-3,3]. Every predicate gets a fact so that trees exist.
    Program program() {
        const int npred = range(1, 4);
        std::vector<std::string> names;
        std::vector<int> arity;
        for (int i = 0; i < npred; ++i) {
            names.push_back(std::string(1, static_cast<char>('p' + i)));
            arity.push_back(range(1, 2));
        }
        std::vector<Clause> out;
        auto fresh_atom = [&](int which, int& counter) {
            Atom a{PredRef(names[static_cast<std::size_t>(which)]), {}};
            for (int j = 0; j < arity[static_cast<std::size_t>(which)]; ++j) a.args.push_back("V" + std::to_string(counter++));
            return a;
        };
        auto clause = [&](std::optional<int> head, int body_atoms) {
            Clause c;
            int counter = 0;
            if (head) c.head = fresh_atom(*head, counter);
            for (int b = 0; b < body_atoms; ++b) c.body.push_back(fresh_atom(range(0, npred - 1), counter));
            std::vector<std::string> vars;
            for (int v = 0; v < counter; ++v) vars.push_back("V" + std::to_string(v));
            const int ncons = range(0, 2);
            for (int i = 0; i < ncons; ++i) c.constraint.push_back(constraint(vars, 3, 3));
            return c;
        };
        for (int i = 0; i < npred; ++i) out.push_back(clause(i, 0));
        const int extra = range(1, 4);
        for (int i = 0; i < extra; ++i) out.push_back(clause(range(0, npred - 1), range(1, 3)));
        if (chance(40)) out.push_back(clause(std::nullopt, 1));
        return Program(out);
    }

    // Random model over the base predicates of `p`: up to two facts each.
    Model model(const Program& p, int max_facts = 2) {
        Model m;
        for (const auto& [name, n] : p.signature()) {
            if (name == "false") continue;
            const auto params = canonical_vars(n);
            const int k = range(0, max_facts);
            for (int i = 0; i < k; ++i) m.add(ConstrainedFact{PredRef(name), params, polyhedron(params, 3)});
        }
        return m;
    }

    // Same, but for every indexed predicate of `p` with index <= max_index.
    Model indexed_model(const Program& p, int max_index, int max_facts = 2) {
        Model m;
        for (const auto& [name, n] : p.signature()) {
            if (name == "false") continue;
            const auto params = canonical_vars(n);
            for (int d = 0; d <= max_index; ++d)
                for (DimIndex idx : {DimIndex::exactly(d), DimIndex::at_most(d)}) {
                    const int k = range(0, max_facts);
                    for (int i = 0; i < k; ++i) m.add(ConstrainedFact{PredRef(name, idx), params, polyhedron(params, 3)});
                }
        }
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Calls f on every integer point of [lo, hi]^vars.size().
inline void for_each_point(const std::vector<std::string>& vars, int lo, int hi,
                           const std::function<void(const std::map<std::string, Rational>&)>& f) {
    std::map<std::string, Rational> pt;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            f(pt);
            return;
        }
        for (int v = lo; v <= hi; ++v) {
            pt[vars[i]] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

// Integer points of the box satisfying every constraint of `c`.
inline std::vector<std::map<std::string, Rational>> grid_points(const Polyhedron& c, int lo, int hi) {
    std::vector<std::map<std::string, Rational>> out;
    if (c.is_empty()) return out;
    for_each_point(c.dims(), lo, hi, [&](const auto& pt) {
        if (c.contains(pt)) out.push_back(pt);
    });
    return out;
}

// Polyhedron over `dims` from constraint text in clause-body syntax,
// e.g. poly({"A","B"}, "A>=0, B=A").
inline Polyhedron poly(const std::vector<std::string>& dims, const std::string& text) {
    std::string head = "q";
    if (!dims.empty()) {
        head += '(';
        for (std::size_t i = 0; i < dims.size(); ++i) head += (i ? "," : "") + dims[i];
        head += ')';
    }
    const Program p = parse_program(head + (text.empty() ? "." : " :- " + text + "."));
    return Polyhedron(dims, p.clauses().front().constraint);
}

}  // namespace testsupport
