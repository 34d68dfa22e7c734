#include "oracles.hh"

#include <rsenum/algebra.hh>
#include <rsenum/embed.hh>
#include <rsenum/orderly.hh>

#include <doctest.h>

#include <map>

using namespace rsenum;

namespace {
    auto rect(std::initializer_list<int> rows, std::initializer_list<int> cols) -> Rectangle
    {
        ElementSet r = 0, c = 0;
        for (int x : rows)
            r |= bits::single(x - 1);
        for (int x : cols)
            c |= bits::single(x - 1);
        return {r, c};
    }

    // A random partial structure built from the oracle's rectangle list.
    auto random_partial(std::mt19937 & rng, int n, int m, int attempts) -> PRS
    {
        static std::map<std::pair<int, int>, std::vector<oracle::Rect>> cache;
        auto & all = cache[{n, m}];
        if (all.empty())
            all = oracle::all_rectangles(n, m);
        PRS x{BaseSet{n, m}};
        for (int i = 0; i < attempts; ++i) {
            const auto & r = all[rng() % all.size()];
            Rectangle lr{bits::from_elements(r.rows), bits::from_elements(r.cols)};
            if (x.is_valid_extension(lr))
                x = x.extended(lr);
        }
        return x;
    }

    auto group_order(const PRS & x) -> long
    {
        return static_cast<long>(group_elements(prs_automorphisms(x), x.base().size()).size());
    }

    auto as_digraph(const std::vector<ElementSet> & rows) -> Digraph
    {
        Digraph g{static_cast<int>(rows.size())};
        for (std::size_t a = 0; a < rows.size(); ++a)
            bits::for_each(rows[a], [&](int b) { g.add_edge(static_cast<int>(a), b); });
        return g;
    }
}

TEST_CASE("graph pair of small structures")
{
    auto empty = prs_to_graph_pair(PRS{BaseSet{2, 2}});
    CHECK(empty == GraphPair{4});

    auto one = prs_to_graph_pair(product_of_points(1, 1));
    CHECK(one.red == std::vector<ElementSet>{1});
    CHECK(one.blue == std::vector<ElementSet>{1});

    auto gp = prs_to_graph_pair(product_of_points(2, 2));
    for (int a = 0; a < 4; ++a) {
        CHECK(bits::count(gp.red[a]) == 2);
        CHECK(bits::count(gp.blue[a]) == 2);
        CHECK(bits::contains(gp.red[a], a));
        CHECK(bits::contains(gp.blue[a], a));
    }
    CHECK(verify_product_J(gp));
}

TEST_CASE("combined graph layout")
{
    auto e = combine(GraphPair{1});
    CHECK(e.graph.edges() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});

    GraphPair loops{1};
    loops.add_red(0, 0);
    loops.add_blue(0, 0);
    CHECK(combine(loops).graph.edges() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}});

    auto full = embed(product_of_points(2, 3));
    CHECK(full.graph.size() == 12);
    for (int x = 0; x < 6; ++x) {
        CHECK(full.graph.has_edge(full.a_node(x), full.a_node(x)));
        CHECK(full.graph.has_edge(full.a_node(x), full.b_node(x)));
        for (int y = 0; y < 6; ++y)
            CHECK(full.graph.has_edge(full.a_node(x), full.b_node(y)) == (x == y));
    }
}

TEST_CASE("graph pairs are covariant")
{
    std::mt19937 rng{23};
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_partial(rng, 2, 3, 12);
        auto g = oracle::random_permutation(rng, 6);
        CHECK(prs_to_graph_pair(x.permuted(g)) == prs_to_graph_pair(x).permuted(g));
    }
}

TEST_CASE("combined graphs reflect isomorphism of 2x2 structures")
{
    std::mt19937 rng{29};
    for (int trial = 0; trial < 150; ++trial) {
        auto x = random_partial(rng, 2, 2, 6);
        auto y = trial % 3 ? random_partial(rng, 2, 2, 6) : x.permuted(oracle::random_permutation(rng, 4));
        const bool expected = oracle::structure_key(oracle::to_rects(x), 4) == oracle::structure_key(oracle::to_rects(y), 4);
        CHECK(are_isomorphic(embed(x).graph, embed(y).graph).has_value() == expected);
    }
}

TEST_CASE("stabilisers of small structures")
{
    CHECK(group_order(PRS{BaseSet{2, 2}}) == 24);
    CHECK(group_order(PRS{BaseSet{2, 3}}) == 720);

    // Fixing rows {1,2} and cols {1,3} setwise pins 1, then 2 and 3, then 4.
    PRS one = PRS{BaseSet{2, 2}}.extended(rect({1, 2}, {1, 3}));
    CHECK(oracle::stabiliser_order(oracle::to_rects(one), 4) == 1);
    CHECK(group_order(one) == 1);

    // Row swaps times column swaps; transposing would exchange the roles.
    auto product = product_of_points(2, 2);
    CHECK(oracle::stabiliser_order(oracle::to_rects(product), 4) == 4);
    CHECK(group_order(product) == 4);
}

TEST_CASE("stabilisers agree with the brute-force oracle")
{
    std::mt19937 rng{31};
    for (int trial = 0; trial < 120; ++trial) {
        auto x = trial % 2 ? random_partial(rng, 2, 2, 1 + trial % 7) : random_partial(rng, 2, 3, 1 + trial % 12);
        const int k = x.base().size();
        auto gens = prs_automorphisms(x);
        for (const auto & g : gens)
            CHECK(x.permuted(g) == x);
        CHECK(group_order(x) == oracle::stabiliser_order(oracle::to_rects(x), k));
    }
}

TEST_CASE("every automorphism of a combined graph keeps the layers apart")
{
    std::mt19937 rng{37};
    std::vector<PRS> inputs;
    for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}})
        for (auto & x : enumerate(n, m).structures)
            inputs.push_back(std::move(x));
    for (int trial = 0; trial < 100; ++trial)
        inputs.push_back(random_partial(rng, 2 + trial % 2, 3, 20));
    for (const auto & x : inputs) {
        auto e = embed(x);
        for (const auto & g : group_elements(automorphism_generators(e.graph), e.graph.size()))
            REQUIRE_NOTHROW((void) restrict_to_base(g, e.base_size));
    }
}

TEST_CASE("automorphisms of a full structure are the common automorphisms of its two graphs")
{
    for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        for (const auto & rs : enumerate(n, m).structures) {
            const int k = rs.base().size();
            auto gp = prs_to_graph_pair(rs);
            auto red = as_digraph(gp.red), blue = as_digraph(gp.blue);
            long both = 0;
            oracle::for_each_permutation(k, [&](const std::vector<int> & p) {
                Permutation g{p};
                both += red.is_automorphism(g) && blue.is_automorphism(g);
            });
            CHECK(both == group_order(rs));
        }
    }
}

TEST_CASE("restriction rejects maps that mix layers")
{
    CHECK_THROWS_AS((void) restrict_to_base(Permutation{{1, 0}}, 1), InvalidStructure);
    CHECK_THROWS_AS((void) restrict_to_base(Permutation{{1, 0, 2, 3}}, 2), InvalidStructure);
    CHECK(restrict_to_base(Permutation{{1, 0, 3, 2}}, 2) == Permutation{{1, 0}});
}
