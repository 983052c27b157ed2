#include "dimsolve/kdim.hpp"

#include <algorithm>
#include <stdexcept>

namespace dimsolve {

namespace {

Atom indexed(const Atom& a, DimIndex idx) { return Atom{PredRef(a.pred.name, idx), a.args}; }

Atom indexed_head(const Clause& c, DimIndex idx) {
    if (c.head) return indexed(*c.head, idx);
    return Atom{PredRef("false", idx), {}};
}

// Sets J with |J| >= 2 (or == 2), by size then lexicographically.
std::vector<std::vector<bool>> tie_sets(std::size_t r, TieSets ties) {
    std::vector<std::vector<bool>> out;
    const std::size_t max_size = ties == TieSets::Pairs ? 2 : r;
    for (std::size_t size = 2; size <= max_size; ++size) {
        std::vector<bool> pick(r, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        // prev_permutation on a true-first mask yields lexicographic order of index sets
        do out.push_back(pick);
        while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

KdimResult kdim_with_source(const Program& p, int k, const KdimOptions& opts) {
    if (k < 0) throw std::invalid_argument("kdim: k must be non-negative");
    if (p.has_indexed()) throw std::invalid_argument("kdim: program already contains indexed predicates");

    std::vector<Clause> out;
    std::vector<std::optional<int>> source;
    auto emit = [&](Clause c, std::optional<int> src) {
        out.push_back(std::move(c));
        source.push_back(src);
    };

    for (const auto& c : p.clauses()) {
        if (c.body.empty()) {
            emit(Clause{0, indexed_head(c, DimIndex::exactly(0)), c.constraint, {}}, c.id);
        } else if (c.body.size() == 1) {
            for (int d = 0; d <= k; ++d)
                emit(Clause{0, indexed_head(c, DimIndex::exactly(d)), c.constraint, {indexed(c.body[0], DimIndex::exactly(d))}},
                     c.id);
        }
    }

    for (const auto& c : p.clauses()) {
        const std::size_t r = c.body.size();
        if (r < 2) continue;
        const auto sets = tie_sets(r, opts.ties);
        for (int d = 1; d <= k; ++d) {
            for (std::size_t j = 0; j < r; ++j) {
                Clause n{0, indexed_head(c, DimIndex::exactly(d)), c.constraint, {}};
                for (std::size_t i = 0; i < r; ++i)
                    n.body.push_back(indexed(c.body[i], i == j ? DimIndex::exactly(d) : DimIndex::at_most(d - 1)));
                emit(std::move(n), c.id);
            }
            for (const auto& in_j : sets) {
                const bool all = std::find(in_j.begin(), in_j.end(), false) == in_j.end();
                if (!all && d < 2) continue;
                Clause n{0, indexed_head(c, DimIndex::exactly(d)), c.constraint, {}};
                for (std::size_t i = 0; i < r; ++i)
                    n.body.push_back(indexed(c.body[i], in_j[i] ? DimIndex::exactly(d - 1) : DimIndex::at_most(d - 2)));
                emit(std::move(n), c.id);
            }
        }
    }

    for (const auto& name : p.predicates()) {
        const auto args = canonical_vars(p.arity(name));
        for (int d = 0; d <= k; ++d)
            for (int e = 0; e <= d; ++e)
                emit(Clause{0, Atom{PredRef(name, DimIndex::at_most(d)), args}, {}, {Atom{PredRef(name, DimIndex::exactly(e)), args}}},
                     std::nullopt);
    }

    return KdimResult{Program(std::move(out)), std::move(source)};
}

Program kdim(const Program& p, int k, const KdimOptions& opts) { return kdim_with_source(p, k, opts).program; }

std::size_t clause_count(const Program& p, int k, const KdimOptions& opts) {
    const std::size_t levels = static_cast<std::size_t>(k) + 1;
    std::size_t n = 0;
    for (const auto& c : p.clauses()) {
        const std::size_t r = c.body.size();
        if (r == 0) {
            n += 1;
        } else if (r == 1) {
            n += levels;
        } else {
            n += static_cast<std::size_t>(k) * r;
            for (int d = 1; d <= k; ++d) {
                if (opts.ties == TieSets::Pairs) {
                    if (r == 2 || d >= 2) n += binomial(r, 2);
                } else {
                    n += d >= 2 ? (std::size_t{1} << r) - r - 1 : 1;
                }
            }
        }
    }
    n += p.predicates().size() * levels * (levels + 1) / 2;
    return n;
}

Program erase_indices(const Program& p) {
    std::vector<Clause> out;
    for (Clause c : p.clauses()) {
        if (c.head) {
            c.head->pred.index.reset();
            if (c.head->pred.is_false()) c.head.reset();
        }
        for (auto& a : c.body) a.pred.index.reset();
        out.push_back(std::move(c));
    }
    return Program(std::move(out));
}

Model erase_indices(const Model& m) {
    Model out;
    for (const auto& [pred, facts] : m.all()) {
        for (ConstrainedFact f : facts) {
            f.pred = pred.base();
            out.add(std::move(f));
        }
    }
    return out;
}

}  // namespace dimsolve
