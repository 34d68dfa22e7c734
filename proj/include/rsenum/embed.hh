#ifndef RSENUM_EMBED_HH
#define RSENUM_EMBED_HH 1

// Embedding of partial rectangular structures into plain digraphs.
//
// A structure X on k points becomes a red/blue graph pair (red m(R) -> y
// for y in the cols of R, blue x -> m(R) for x in the rows of R). The pair
// becomes one digraph on 2k nodes: node x carries the red graph, node k+x
// the blue graph, every x has a loop and an edge x -> k+x. Automorphisms of
// that digraph restrict to exactly the stabiliser of X in Sym(k).

#include <rsenum/canon.hh>
#include <rsenum/core.hh>

#include <vector>

namespace rsenum {

struct EmbeddedGraph
{
    Digraph graph;
    int base_size = 0;

    [[nodiscard]] auto a_node(int x) const noexcept -> int { return x; }
    [[nodiscard]] auto b_node(int x) const noexcept -> int { return base_size + x; }
    /// A rectangle is represented by the a-layer node of its middle.
    [[nodiscard]] auto rectangle_node(const Rectangle & r) const noexcept -> int { return a_node(r.middle()); }
};

[[nodiscard]] auto prs_to_graph_pair(const PRS & x) -> GraphPair;
[[nodiscard]] auto combine(const GraphPair & gp) -> EmbeddedGraph;
[[nodiscard]] auto embed(const PRS & x) -> EmbeddedGraph;

/// Reads a base permutation off an automorphism of a combined graph. Throws
/// InvalidStructure if the automorphism does not preserve the two layers
/// and the cross edges.
[[nodiscard]] auto restrict_to_base(const Permutation & graph_automorphism, int base_size) -> Permutation;

/// Generators of the stabiliser of x in Sym(base set).
[[nodiscard]] auto prs_automorphisms(const PRS & x, SearchStatistics * stats = nullptr) -> std::vector<Permutation>;

struct EmbeddedCanonical
{
    EmbeddedGraph embedded;
    CanonicalResult canonical;
    /// Stabiliser generators on the base set.
    std::vector<Permutation> base_generators;
};

[[nodiscard]] auto canonicalize_prs(const PRS & x, SearchStatistics * stats = nullptr) -> EmbeddedCanonical;

}

#endif
