#pragma once

#include "dimsolve/chc.hpp"
#include "dimsolve/model.hpp"
#include "dimsolve/polyhedron.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <string>

namespace dimsolve {

enum class Widening { Standard, H79 };

struct LinsolveOptions {
    /// Rounds in which a predicate changed before its updates are widened.
    int widen_delay = 1;
    /// Widen every predicate, not only those on a dependency cycle.
    bool widen_everywhere = true;
    Widening widening = Widening::H79;
    /// When `false` becomes derivable the solve is repeated with the delay
    /// raised by one, at most this many times.
    int delay_retries = 3;
    /// Descending passes after stabilization.
    bool narrow = false;
    int max_rounds = 200;
    CheckOptions check;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// One polyhedron per predicate over the parameters A, B, ...; predicates
/// absent from `interp` are empty.
struct AbstractState {
    std::map<PredRef, Polyhedron> interp;
    /// Number of rounds in which the predicate's polyhedron grew.
    std::map<PredRef, int> iteration;

    const Polyhedron* find(const PredRef& p) const;
};

/// One Jacobi round: every predicate is joined with what its clauses derive
/// from `s`, through widening once its iteration count exceeds the delay.
AbstractState step(const Program& p, const AbstractState& s, const LinsolveOptions& opts = {});

/// Both states denote the same polyhedron for every predicate.
bool stabilized(const AbstractState& a, const AbstractState& b);

struct LinearVerdict {
    enum class Status { Solved, NotSolved };
    Status status = Status::NotSolved;
    /// Valid when solved.
    Model model;
    std::string reason;
    int rounds = 0;

    bool solved() const { return status == Status::Solved; }
};

/// Throws std::invalid_argument on non-linear input.
LinearVerdict solve_linear(const Program& p, const LinsolveOptions& opts = {});

/// Non-empty polyhedra of non-false predicates as one fact each.
Model to_model(const AbstractState& s);

}  // namespace dimsolve
