#pragma once

#include "dimsolve/chc.hpp"
#include "dimsolve/kdim.hpp"
#include "dimsolve/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dimsolve {

struct Config {
    int max_k = 8;
    int widen_delay = 1;
    /// Extra attempts per level, each with the widening delay one longer.
    int delay_retries = 3;
    bool narrow = false;
    std::size_t split_budget = 10000;
    bool trace = false;
    /// Wall-clock budget in seconds; none when unset.
    std::optional<double> timeout_s;
    KdimOptions kdim;
};

struct LevelStats {
    int k = 0;
    std::size_t clauses = 0;
    int rounds = 0;
    std::size_t facts = 0;
    double ms = 0;
};

struct SolveOutcome {
    enum class Status { Solved, Unknown };
    Status status = Status::Unknown;
    /// Index-free solution of the input program when solved.
    Model model;
    /// "not-solved", "max-k" or "timeout" when unknown.
    std::string reason;
    int k_reached = 0;
    std::vector<LevelStats> levels;

    bool solved() const { return status == Status::Solved; }
};

/// Facts with a constraint entailing another fact of the same predicate are
/// dropped; of equivalent facts the first is kept.
Model without_subsumed(const Model& m);

/// Iterates over k: solve the linearized at-most-k program, stop once the
/// accumulated model is a solution of `p`. Trace lines go to `trace` when
/// cfg.trace is set.
SolveOutcome solve(const Program& p, const Config& cfg = {}, std::ostream* trace = nullptr);

}  // namespace dimsolve
