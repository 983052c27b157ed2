#pragma once

#include "dimsolve/chc.hpp"
#include "dimsolve/polyhedron.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dimsolve {

/// Derivation tree labelled with clause ids; one child per body atom.
struct DerivTree {
    int clause_id = 0;
    std::vector<DerivTree> children;

    bool operator==(const DerivTree&) const = default;
    /// Clause id first, then children lexicographically.
    bool operator<(const DerivTree& other) const;
};

DerivTree leaf(int clause_id);
DerivTree node(int clause_id, std::vector<DerivTree> children);

int dim(const DerivTree& t);
/// Edges on the longest root-to-leaf path (a single node has height 0).
int height(const DerivTree& t);
/// Nodes on the longest root-to-leaf path, i.e. height + 1.
int level_count(const DerivTree& t);
std::size_t node_count(const DerivTree& t);

/// `c2(c1,c1)`
std::string encode(const DerivTree& t);

/// One `c<id>` line per node, indented two spaces per level.
std::string dump(const DerivTree& t);
/// Reads trees written by `dump`; blank lines separate trees.
std::vector<DerivTree> parse_dump(std::string_view text);

/// Constraint of the whole tree, built in one conjunction with the variables
/// of every node renamed apart and projected onto canonical parameters of
/// the root head. nullopt when the tree does not match the program.
std::optional<Polyhedron> tree_constraint(const Program& p, const DerivTree& t);

/// Derivation trees of `p` rooted at `root`, ordered by node count, then by
/// clause ids in preorder. Only trees with a satisfiable constraint are
/// produced; unsatisfiable subtrees are discarded as soon as they are built.
/// Clauses listed in `unweighted` do not count towards `max_nodes`; they
/// must not form cycles among themselves.
class TreeStream {
public:
    TreeStream(const Program& p, const PredRef& root, std::size_t max_nodes, std::set<int> unweighted = {});
    ~TreeStream();
    TreeStream(TreeStream&&) noexcept;
    TreeStream& operator=(TreeStream&&) noexcept;

    std::optional<DerivTree> next();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<DerivTree> enumerate(const Program& p, const PredRef& root, std::size_t max_nodes,
                                 std::set<int> unweighted = {});

/// Replaces every node labelled with an unweighted clause by its single
/// child, then relabels the remaining nodes through `relabel` (indexed by
/// clause id - 1).
DerivTree contract_unit_steps(const DerivTree& t, const std::set<int>& unit, const std::vector<int>& relabel);

}  // namespace dimsolve
