#pragma once

// Dense integer constraint rows shared by the polyhedron operations.
// A row stands for  coef . x + constant  (= | <= | <)  0.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace dimsolve::detail {

enum class RowKind { Eq, Le, Lt };

struct Row {
    std::vector<mpz_class> coef;
    mpz_class constant;
    RowKind kind = RowKind::Le;

    bool is_zero() const;
};

/// `integral` marks systems whose variables are all integer-valued; their
/// rows are tightened on normalization and strict rows become non-strict.
struct RowSystem {
    std::size_t num_vars = 0;
    std::vector<Row> rows;
    bool contradiction = false;
    bool integral = true;

    explicit RowSystem(std::size_t n = 0, bool integral_vars = true) : num_vars(n), integral(integral_vars) {}

    /// Normalizes and appends; trivial rows are dropped, false rows set
    /// `contradiction`.
    void add(Row row);
};

enum class RowStatus { Ok, Trivial, Contradiction };

RowStatus normalize_row(Row& row, bool integral);

/// Rows whose negation gives the complement of `row` (two for equalities).
std::vector<Row> negate_row(const Row& row);

/// Merges rows sharing a direction into the tightest bounds, turns matching
/// opposite bounds into equalities and detects direct contradictions.
void prune(RowSystem& sys);

/// Exact rational feasibility (simplex with Bland's rule); integral
/// systems additionally branch on fractional solutions, up to a small budget.
bool feasible(const RowSystem& sys);

/// Removes rows implied by the remaining ones.
void remove_redundant(RowSystem& sys);

/// Minimal form: inequalities that hold with equality everywhere become
/// equalities, equalities are reduced to echelon form and their pivot
/// variables are substituted out of the inequalities, redundant rows go.
void minimize(RowSystem& sys);

/// Existentially eliminates one variable (equality substitution when
/// possible, Fourier-Motzkin otherwise). The column stays, with zero
/// coefficients.
void eliminate(RowSystem& sys, std::size_t var);

/// Eliminates every variable whose `keep` flag is false, cheapest first.
void eliminate_except(RowSystem& sys, const std::vector<bool>& keep);

}  // namespace dimsolve::detail
