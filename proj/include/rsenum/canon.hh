#ifndef RSENUM_CANON_HH
#define RSENUM_CANON_HH 1

// Canonical labelling and automorphism groups of small directed graphs
// (loops allowed, at most 64 nodes).
//
// The search is the usual individualisation-refinement tree: refine to an
// equitable ordered partition, branch on the first non-singleton cell, and
// keep the leaf whose (refinement trace, relabelled adjacency) is least.
// Leaves equivalent to the first leaf or to the current best leaf yield
// automorphisms; these prune siblings lying in a common orbit of the
// pointwise stabiliser of the current branch.

#include <rsenum/core.hh>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rsenum {

class Digraph
{
public:
    explicit Digraph(int nodes = 0);

    [[nodiscard]] auto size() const noexcept -> int { return static_cast<int>(out_.size()); }
    void add_edge(int from, int to);
    [[nodiscard]] auto has_edge(int from, int to) const -> bool { return bits::contains(out_[from], to); }
    [[nodiscard]] auto out(int node) const -> ElementSet { return out_[node]; }
    [[nodiscard]] auto in(int node) const -> ElementSet { return in_[node]; }
    [[nodiscard]] auto edge_count() const -> int;
    /// Sorted edge list.
    [[nodiscard]] auto edges() const -> std::vector<std::pair<int, int>>;
    /// Node u becomes p(u).
    [[nodiscard]] auto relabeled(const Permutation & p) const -> Digraph;
    [[nodiscard]] auto is_automorphism(const Permutation & p) const -> bool;

    auto operator==(const Digraph &) const -> bool = default;

private:
    std::vector<ElementSet> out_;
    std::vector<ElementSet> in_;
};

struct CanonicalResult
{
    /// labeling(u) is the canonical label of node u.
    Permutation labeling;
    /// Sorted edges of relabeled(labeling).
    std::vector<std::pair<int, int>> canonical_form;
    std::vector<Permutation> automorphism_generators;
};

struct SearchStatistics
{
    long tree_nodes = 0;
    long leaves = 0;
};

[[nodiscard]] auto canonicalize(const Digraph & g, SearchStatistics * stats = nullptr) -> CanonicalResult;

/// Generators of Aut(g) without computing a canonical labelling. The search
/// only follows branches whose refinement trace matches the first leaf.
[[nodiscard]] auto automorphism_generators(const Digraph & g, SearchStatistics * stats = nullptr)
    -> std::vector<Permutation>;

/// A bijection p with g1.relabeled(p) == g2, if one exists.
[[nodiscard]] auto are_isomorphic(const Digraph & g1, const Digraph & g2) -> std::optional<Permutation>;

/// Every bijection p with g1.relabeled(p) == g2, sorted.
[[nodiscard]] auto all_isomorphisms(const Digraph & g1, const Digraph & g2) -> std::vector<Permutation>;

// Permutation group helpers. Groups are given by generators acting on
// {0, ..., points-1}.

/// orbit_representatives(...)[x] is the least element of the orbit of x.
[[nodiscard]] auto orbit_representatives(const std::vector<Permutation> & generators, int points) -> std::vector<int>;

/// All elements of the generated group, sorted. Throws std::length_error
/// once more than `limit` elements have been found.
[[nodiscard]] auto group_elements(const std::vector<Permutation> & generators, int points, std::size_t limit = 1'000'000)
    -> std::vector<Permutation>;

}

#endif
