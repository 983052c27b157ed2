#include "dimsolve/linsolve.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dimsolve {

const Polyhedron* AbstractState::find(const PredRef& p) const {
    auto it = interp.find(p);
    return it == interp.end() ? nullptr : &it->second;
}

namespace {

// What clause `c` derives for its head from `s`, over canonical parameters;
// nullopt when a body atom is empty.
std::optional<Polyhedron> derive(const Clause& c, const AbstractState& s) {
    const auto vs = c.vars();
    Polyhedron body({vs.begin(), vs.end()}, c.constraint);
    for (const auto& a : c.body) {
        const Polyhedron* in = s.find(a.pred);
        if (!in || in->is_empty()) return std::nullopt;
        std::map<std::string, std::string> to_args;
        for (std::size_t i = 0; i < a.args.size(); ++i) to_args.emplace(canonical_var(i), a.args[i]);
        body.add_all(in->renamed(to_args).constraints());
    }
    if (body.is_empty()) return std::nullopt;
    std::vector<std::string> head_args;
    if (c.head) head_args = c.head->args;
    std::map<std::string, std::string> to_canonical;
    for (std::size_t i = 0; i < head_args.size(); ++i) to_canonical.emplace(head_args[i], canonical_var(i));
    Polyhedron out = simplify(project(body, head_args)).renamed(to_canonical);
    if (out.is_empty()) return std::nullopt;
    return out;
}

// Hull of everything the clauses derive from `s`, per head predicate.
std::map<PredRef, Polyhedron> image(const Program& p, const AbstractState& s) {
    std::map<PredRef, Polyhedron> out;
    for (const auto& c : p.clauses()) {
        auto d = derive(c, s);
        if (!d) continue;
        auto [it, inserted] = out.emplace(c.head_pred(), *d);
        if (!inserted) it->second = hull(it->second, *d);
    }
    return out;
}

// Predicates on a dependency cycle; only these need widening.
std::set<PredRef> recursive_preds(const Program& p) {
    std::map<PredRef, std::set<PredRef>> deps;
    for (const auto& c : p.clauses())
        for (const auto& a : c.body) deps[c.head_pred()].insert(a.pred);
    std::set<PredRef> out;
    for (const auto& [start, direct] : deps) {
        std::set<PredRef> seen;
        std::vector<PredRef> todo(direct.begin(), direct.end());
        while (!todo.empty()) {
            PredRef q = todo.back();
            todo.pop_back();
            if (q == start) {
                out.insert(start);
                break;
            }
            if (!seen.insert(q).second) continue;
            if (auto it = deps.find(q); it != deps.end()) todo.insert(todo.end(), it->second.begin(), it->second.end());
        }
    }
    return out;
}

// Candidate bounds per predicate: what each clause says about the arguments
// of its head and of each body atom, taken whole and per argument. A widened
// polyhedron keeps every candidate that the unwidened join satisfies.
std::map<PredRef, std::vector<AtomicConstraint>> thresholds(const Program& p) {
    std::map<PredRef, std::vector<AtomicConstraint>> out;
    auto collect = [&](const Clause& c, const PredRef& pred, const std::vector<std::string>& args) {
        const auto vs = c.vars();
        const Polyhedron whole({vs.begin(), vs.end()}, c.constraint);
        std::map<std::string, std::string> to_canonical;
        for (std::size_t i = 0; i < args.size(); ++i) to_canonical.emplace(args[i], canonical_var(i));
        auto& dst = out[pred];
        auto push = [&](const Polyhedron& q) {
            if (q.is_empty()) return;
            const Polyhedron r = q.renamed(to_canonical);
            for (const auto& a : r.constraints()) {
                std::vector<AtomicConstraint> parts{a};
                if (a.is_equality()) parts = {AtomicConstraint::le(a.expr()), AtomicConstraint::le(-a.expr())};
                for (auto& x : parts)
                    if (std::find(dst.begin(), dst.end(), x) == dst.end()) dst.push_back(std::move(x));
            }
        };
        // Repeated arguments would merge under renaming; skip those atoms.
        if (std::set<std::string>(args.begin(), args.end()).size() != args.size()) return;
        push(simplify(project(whole, args)));
        for (const auto& a : args) push(simplify(project(whole, std::vector<std::string>{a})));
    };
    for (const auto& c : p.clauses()) {
        if (c.head && !c.head_pred().is_false()) collect(c, c.head_pred(), c.head->args);
        for (const auto& a : c.body) collect(c, a.pred, a.args);
    }
    return out;
}

void check_linear(const Program& p) {
    if (!is_linear(p)) throw std::invalid_argument("solve_linear: program is not linear");
}

bool past(const LinsolveOptions& opts) {
    return opts.deadline && std::chrono::steady_clock::now() > *opts.deadline;
}

}  // namespace

AbstractState step(const Program& p, const AbstractState& s, const LinsolveOptions& opts) {
    const std::set<PredRef> widen_at = recursive_preds(p);
    const auto bounds = thresholds(p);
    AbstractState next = s;
    for (auto& [pred, derived] : image(p, s)) {
        const Polyhedron* old = s.find(pred);
        if (!old || old->is_empty()) {
            next.interp[pred] = derived;
            ++next.iteration[pred];
            continue;
        }
        if (entails(derived, *old)) continue;
        Polyhedron joined = hull(*old, derived);
        if ((opts.widen_everywhere || widen_at.count(pred)) && next.iteration[pred] > opts.widen_delay) {
            Polyhedron w = opts.widening == Widening::H79 ? widen_h79(*old, joined) : widen(*old, joined);
            if (auto it = bounds.find(pred); it != bounds.end())
                for (const auto& t : it->second)
                    if (entails(joined, t)) w.add(t);
            joined = simplify(w);
        }
        next.interp[pred] = std::move(joined);
        ++next.iteration[pred];
    }
    return next;
}

bool stabilized(const AbstractState& a, const AbstractState& b) {
    std::set<PredRef> preds;
    for (const auto& [p, poly] : a.interp) preds.insert(p);
    for (const auto& [p, poly] : b.interp) preds.insert(p);
    for (const auto& p : preds) {
        const Polyhedron* x = a.find(p);
        const Polyhedron* y = b.find(p);
        const bool ex = !x || x->is_empty();
        const bool ey = !y || y->is_empty();
        if (ex || ey) {
            if (ex != ey) return false;
            continue;
        }
        if (!equivalent(*x, *y)) return false;
    }
    return true;
}

Model to_model(const AbstractState& s) {
    Model m;
    for (const auto& [pred, poly] : s.interp) {
        if (pred.is_false() || poly.is_empty()) continue;
        m.add(ConstrainedFact{pred, poly.dims(), poly});
    }
    return m;
}

namespace {

bool models(const Model& m, const Program& p, const CheckOptions& check) {
    return std::all_of(p.clauses().begin(), p.clauses().end(),
                       [&](const Clause& c) { return satisfies_clause(m, c, check); });
}

LinearVerdict attempt(const Program& p, const LinsolveOptions& opts) {
    LinearVerdict verdict;
    AbstractState state;
    for (;;) {
        if (past(opts)) {
            verdict.reason = "timeout";
            return verdict;
        }
        if (verdict.rounds >= opts.max_rounds) {
            verdict.reason = "round limit";
            return verdict;
        }
        AbstractState next = step(p, state, opts);
        ++verdict.rounds;
        const bool done = stabilized(state, next);
        state = std::move(next);
        if (done) break;
    }

    if (opts.narrow) {
        // A descending pass from a post-fixpoint; kept only if the result
        // still passes the clause check.
        AbstractState narrowed = state;
        narrowed.interp.clear();
        for (auto& [pred, poly] : image(p, state)) narrowed.interp[pred] = std::move(poly);
        if (models(to_model(narrowed), p, opts.check)) state = std::move(narrowed);
    }

    for (const auto& [pred, poly] : state.interp) {
        if (pred.is_false() && !poly.is_empty()) {
            verdict.reason = "derived " + to_string(pred);
            return verdict;
        }
    }
    Model m = to_model(state);
    for (const auto& c : p.clauses()) {
        if (!satisfies_clause(m, c, opts.check)) {
            verdict.reason = "clause " + std::to_string(c.id) + " fails the model check";
            return verdict;
        }
    }
    verdict.status = LinearVerdict::Status::Solved;
    verdict.model = std::move(m);
    return verdict;
}

}  // namespace

LinearVerdict solve_linear(const Program& p, const LinsolveOptions& opts) {
    check_linear(p);
    LinsolveOptions o = opts;
    int rounds = 0;
    for (int retry = 0;; ++retry) {
        LinearVerdict v = attempt(p, o);
        rounds += v.rounds;
        v.rounds = rounds;
        const bool imprecise = v.reason.rfind("derived ", 0) == 0;
        if (v.solved() || !imprecise || retry >= opts.delay_retries) return v;
        ++o.widen_delay;
    }
}

}  // namespace dimsolve
