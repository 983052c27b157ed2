#include "dimsolve/driver.hpp"

#include "dimsolve/linsolve.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace dimsolve {

Model without_subsumed(const Model& m) {
    Model out;
    for (const auto& [pred, facts] : m.all()) {
        std::vector<ConstrainedFact> kept;
        for (std::size_t i = 0; i < facts.size(); ++i) {
            bool drop = false;
            for (std::size_t j = 0; j < facts.size() && !drop; ++j) {
                if (i == j) continue;
                const Polyhedron other = facts[j].instantiate(facts[i].params);
                if (!entails(facts[i].constraint, other)) continue;
                // Equivalent facts: keep the earlier one.
                drop = j < i || !entails(other, facts[i].constraint);
            }
            if (!drop) kept.push_back(facts[i]);
        }
        out.set(pred, std::move(kept));
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

Model accumulate(const Model& acc, const Model& level) {
    Model out = acc;
    for (const auto& [pred, facts] : level.all())
        for (const auto& f : facts) out.add(f);
    return without_subsumed(out);
}

bool safe_for(const Model& m, const std::vector<Clause>& queries, const CheckOptions& check) {
    const Model erased = erase_indices(m);
    return std::all_of(queries.begin(), queries.end(),
                       [&](const Clause& c) { return satisfies_clause(erased, c, check); });
}

}  // namespace

SolveOutcome solve(const Program& p, const Config& cfg, std::ostream* trace) {
    if (cfg.max_k < 0) throw std::invalid_argument("max_k must be non-negative");
    if (p.has_indexed()) throw std::invalid_argument("input program already contains indexed predicates");
    const auto start = Clock::now();
    std::optional<Clock::time_point> deadline;
    if (cfg.timeout_s)
        deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*cfg.timeout_s));
    auto log = [&](const std::string& line) {
        if (cfg.trace && trace) *trace << line << '\n';
    };

    LinsolveOptions lopts;
    lopts.widen_delay = cfg.widen_delay;
    lopts.narrow = cfg.narrow;
    lopts.check.split_budget = cfg.split_budget;
    lopts.deadline = deadline;
    lopts.delay_retries = 0;
    CheckOptions check;
    check.split_budget = cfg.split_budget;
    std::vector<Clause> queries;
    for (const auto& c : p.clauses())
        if (c.head_pred().is_false()) queries.push_back(c);

    SolveOutcome outcome;
    Model s_k;
    Program current = kdim(p, 0, cfg.kdim);
    for (int k = 0;; ++k) {
        outcome.k_reached = k;
        const auto level_start = Clock::now();
        log("k=" + std::to_string(k) + " clauses=" + std::to_string(current.clauses().size()));
        // Over-wide facts for at-most predicates are not caught inside a level
        // (only the exact-dimension copies feed its queries), so a level whose
        // facts break a query of `p` is re-solved with a longer widening delay.
        LinearVerdict v;
        std::optional<LinearVerdict> fallback;
        int rounds = 0;
        for (int retry = 0; retry <= cfg.delay_retries; ++retry) {
            lopts.widen_delay = cfg.widen_delay + retry;
            v = solve_linear(current, lopts);
            rounds += v.rounds;
            if (v.reason == "timeout") break;
            if (v.solved()) {
                if (safe_for(accumulate(s_k, v.model), queries, check)) break;
                if (!fallback) fallback = v;
                log("k=" + std::to_string(k) + " delay " + std::to_string(lopts.widen_delay) + ": facts break a query");
            } else {
                log("k=" + std::to_string(k) + " delay " + std::to_string(lopts.widen_delay) + ": " + v.reason);
            }
        }
        if (!v.solved() && v.reason != "timeout" && fallback) v = *fallback;
        v.rounds = rounds;
        LevelStats stats;
        stats.k = k;
        stats.clauses = current.clauses().size();
        stats.rounds = v.rounds;
        if (!v.solved()) {
            stats.ms = std::chrono::duration<double, std::milli>(Clock::now() - level_start).count();
            outcome.levels.push_back(stats);
            outcome.reason = v.reason == "timeout" ? "timeout" : "not-solved";
            log("k=" + std::to_string(k) + " not solved: " + v.reason);
            return outcome;
        }
        s_k = accumulate(s_k, v.model);
        stats.facts = s_k.size();
        log("k=" + std::to_string(k) + " solved in " + std::to_string(v.rounds) + " rounds\n" + to_string(s_k));

        const bool done = inductive(s_k, p, check);
        stats.ms = std::chrono::duration<double, std::milli>(Clock::now() - level_start).count();
        outcome.levels.push_back(stats);
        if (done) {
            log("k=" + std::to_string(k) + " inductive");
            outcome.status = SolveOutcome::Status::Solved;
            outcome.model = without_subsumed(erase_indices(s_k));
            return outcome;
        }
        log("k=" + std::to_string(k) + " not inductive");
        if (k + 1 > cfg.max_k) {
            outcome.reason = "max-k";
            return outcome;
        }
        if (deadline && Clock::now() > *deadline) {
            outcome.reason = "timeout";
            return outcome;
        }
        current = linearize(kdim(p, k + 1, cfg.kdim), s_k);
    }
}

}  // namespace dimsolve
