#include <rsenum/embed.hh>

using std::vector;

namespace rsenum {

auto prs_to_graph_pair(const PRS & x) -> GraphPair
{
    GraphPair gp{x.base().size()};
    for (const auto & r : x.rectangles()) {
        const int m = r.middle();
        gp.red[m] |= r.cols();
        bits::for_each(r.rows(), [&](int a) { gp.add_blue(a, m); });
    }
    return gp;
}

auto combine(const GraphPair & gp) -> EmbeddedGraph
{
    const int k = gp.order;
    EmbeddedGraph result{Digraph{2 * k}, k};
    auto & g = result.graph;
    for (int x = 0; x < k; ++x) {
        bits::for_each(gp.red[x], [&](int y) { g.add_edge(result.a_node(x), result.a_node(y)); });
        bits::for_each(gp.blue[x], [&](int y) { g.add_edge(result.b_node(x), result.b_node(y)); });
        g.add_edge(result.a_node(x), result.b_node(x));
        g.add_edge(result.a_node(x), result.a_node(x));
    }
    return result;
}

auto embed(const PRS & x) -> EmbeddedGraph
{
    return combine(prs_to_graph_pair(x));
}

auto restrict_to_base(const Permutation & graph_automorphism, int base_size) -> Permutation
{
    if (graph_automorphism.size() != 2 * base_size)
        throw std::invalid_argument("automorphism does not act on a combined graph of this size");
    vector<int> images(base_size);
    for (int x = 0; x < base_size; ++x) {
        const int image = graph_automorphism(x);
        if (image >= base_size || graph_automorphism(base_size + x) != base_size + image)
            throw InvalidStructure("combined-graph automorphism does not preserve the layers");
        images[x] = image;
    }
    return Permutation{std::move(images)};
}

namespace {
    auto restrict_all(const vector<Permutation> & generators, int k) -> vector<Permutation>
    {
        vector<Permutation> result;
        result.reserve(generators.size());
        for (const auto & p : generators)
            result.push_back(restrict_to_base(p, k));
        return result;
    }
}

auto prs_automorphisms(const PRS & x, SearchStatistics * stats) -> vector<Permutation>
{
    auto e = embed(x);
    return restrict_all(automorphism_generators(e.graph, stats), e.base_size);
}

auto canonicalize_prs(const PRS & x, SearchStatistics * stats) -> EmbeddedCanonical
{
    auto e = embed(x);
    auto c = canonicalize(e.graph, stats);
    auto generators = restrict_all(c.automorphism_generators, e.base_size);
    return {std::move(e), std::move(c), std::move(generators)};
}

}
