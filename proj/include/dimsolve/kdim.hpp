#pragma once

#include "dimsolve/chc.hpp"
#include "dimsolve/model.hpp"

#include <optional>
#include <vector>

namespace dimsolve {

/// Which sets J of equal-dimension children the non-linear rule covers.
/// `Pairs` uses exactly the 2-element sets; it misses nodes with three or
/// more children tied at the maximum dimension. `AtLeastTwo` uses every J
/// with |J| >= 2 and makes the derivation trees of the result exactly the
/// trees of dimension <= k. Both coincide on clauses with two body atoms.
enum class TieSets { Pairs, AtLeastTwo };

struct KdimOptions {
    TieSets ties = TieSets::AtLeastTwo;
};

struct KdimResult {
    Program program;
    /// Source clause id per output clause; empty for the unit clauses
    /// p[d] :- p(e).
    std::vector<std::optional<int>> source;
};

/// At-most-k-dimension program. Clause order: clauses derived from
/// constraint-only and one-atom clauses, then non-linear clauses, then the
/// unit clauses; within a group by source clause, then d, then j or J.
KdimResult kdim_with_source(const Program& p, int k, const KdimOptions& opts = {});
Program kdim(const Program& p, int k, const KdimOptions& opts = {});

/// Closed-form size of kdim(p, k).
std::size_t clause_count(const Program& p, int k, const KdimOptions& opts = {});

/// Indexed predicates replaced by their base names; indexed `false`
/// heads become the reserved `false`.
Program erase_indices(const Program& p);
/// Facts of all indexed copies of a predicate become one disjunction.
Model erase_indices(const Model& m);

}  // namespace dimsolve
