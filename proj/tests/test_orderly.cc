#include "oracles.hh"

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

    auto to_rect(const oracle::Rect & r) -> Rectangle
    {
        return {bits::from_elements(r.rows), bits::from_elements(r.cols)};
    }

    auto random_partial(std::mt19937 & rng, int n, int m, int attempts) -> PRS
    {
        static std::map<std::pair<int, int>, std::vector<oracle::Rect>> cache;
        auto & all = cache[{n, m}];
        if (all.empty())
            all = oracle::all_rectangles(n, m);
        PRS x{BaseSet{n, m}};
        for (int i = 0; i < attempts; ++i) {
            auto r = to_rect(all[rng() % all.size()]);
            if (x.is_valid_extension(r))
                x = x.extended(r);
        }
        return x;
    }

    auto oracle_value(const PRS & x, const Rectangle & r) -> CombinatorialValue
    {
        auto v = oracle::value(oracle::to_rects(x), {bits::elements(r.rows()), bits::elements(r.cols())});
        return {v.v1, v.v2, v.rows, v.cols};
    }

    // Theta without shortcuts: always canonicalise, orbit from the full
    // brute-force stabiliser.
    auto theta_oracle(const PRS & x, const Rectangle & r) -> bool
    {
        const int k = x.base().size();
        auto canon = canonicalize_prs(x);
        auto key = [&](const Rectangle & q) {
            return std::pair{oracle_value(x, q), canon.canonical.labeling(canon.embedded.rectangle_node(q))};
        };
        const Rectangle * best = &x.rectangles().front();
        for (const auto & q : x.rectangles())
            if (key(q) < key(*best))
                best = &q;
        for (const auto & g : oracle::stabiliser(oracle::to_rects(x), k))
            if (g[best->middle()] == r.middle())
                return true;
        return false;
    }
}

TEST_CASE("combinatorial value of a lone rectangle")
{
    auto r = rect({1, 2}, {1, 3});
    PRS x = PRS{BaseSet{2, 2}}.extended(r);
    auto v = combinatorial_value(x, r);
    CHECK(v.rows_through_middle == 1);
    CHECK(v.cols_through_middle == 1);
    CHECK(v.row_intersections == std::vector<int>{2});
    CHECK(v.col_intersections == std::vector<int>{2});
    CHECK_THROWS_AS((void) combinatorial_value(x, rect({3, 4}, {2, 3})), std::invalid_argument);
}

TEST_CASE("combinatorial values of a three-rectangle structure")
{
    PRS x{BaseSet{2, 2}};
    x = x.extended(rect({1, 2}, {1, 3})).extended(rect({3, 4}, {2, 3}));
    auto candidates = candidate_extensions(x);
    REQUIRE_FALSE(candidates.empty());
    x = x.extended(candidates.front());
    REQUIRE(x.size() == 3);
    for (const auto & r : x.rectangles())
        CHECK(combinatorial_value(x, r) == oracle_value(x, r));
    // ({1,2},{1,3}): 1 lies in its own rows and cols only.
    auto v = combinatorial_value(x, rect({1, 2}, {1, 3}));
    CHECK(v.rows_through_middle >= 1);
    CHECK(v.row_intersections.back() == 2);
}

TEST_CASE("combinatorial values are invariant and match a naive recount")
{
    std::mt19937 rng{41};
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_partial(rng, 2, 2, 8);
        if (x.empty())
            continue;
        auto g = oracle::random_permutation(rng, 4);
        auto y = x.permuted(g);
        for (const auto & r : x.rectangles()) {
            CHECK(combinatorial_value(x, r) == combinatorial_value(y, r.permuted(g)));
            CHECK(combinatorial_value(x, r) == oracle_value(x, r));
        }
    }
}

TEST_CASE("candidate extensions")
{
    CHECK(candidate_extensions(product_of_points(2, 2)).empty());
    CHECK(candidate_extensions(PRS{BaseSet{1, 2}}) == std::vector<Rectangle>{rect({1}, {1, 2}), rect({2}, {1, 2})});
    // Middle, then one more row element, then one more column element
    // distinct from both: 4 * 3 * 2.
    CHECK(candidate_extensions(PRS{BaseSet{2, 2}}).size() == 24);
    CHECK(candidate_extensions(PRS{BaseSet{2, 2}}).size() == oracle::all_rectangles(2, 2).size());
}

TEST_CASE("candidate extensions agree with filtering every rectangle")
{
    std::mt19937 rng{43};
    for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        const auto all = oracle::all_rectangles(n, m);
        for (int trial = 0; trial < 25; ++trial) {
            auto x = random_partial(rng, n, m, trial);
            if (x.is_full())
                continue;
            auto s = oracle::to_rects(x);
            std::vector<Rectangle> expected;
            for (const auto & r : all)
                if (oracle::is_valid_extension(s, r, n * m))
                    expected.push_back(to_rect(r));
            std::sort(expected.begin(), expected.end());
            REQUIRE(candidate_extensions(x) == expected);
        }
    }
}

TEST_CASE("orbit representatives of candidates")
{
    std::mt19937 rng{47};
    for (int trial = 0; trial < 40; ++trial) {
        auto x = random_partial(rng, 2, 3, trial % 5);
        auto candidates = candidate_extensions(x);
        auto reps = orbit_representatives(candidates, prs_automorphisms(x));
        // Count orbits of the brute-force stabiliser directly.
        std::set<Rectangle> seen;
        int orbits = 0;
        auto group = oracle::stabiliser(oracle::to_rects(x), 6);
        for (const auto & r : candidates) {
            if (seen.count(r))
                continue;
            ++orbits;
            CHECK(std::find(reps.begin(), reps.end(), r) != reps.end());
            for (const auto & g : group)
                seen.insert(r.permuted(Permutation{g}));
        }
        CHECK(static_cast<int>(reps.size()) == orbits);
    }
}

TEST_CASE("theta accepts the only rectangle")
{
    for (const auto & r : candidate_extensions(PRS{BaseSet{2, 3}}))
        CHECK(theta_accept(PRS{BaseSet{2, 3}}.extended(r), r));
}

TEST_CASE("theta agrees with the shortcut-free oracle on two-rectangle 2x2 structures")
{
    auto first = rect({1, 2}, {1, 3});
    PRS x = PRS{BaseSet{2, 2}}.extended(first);
    auto candidates = candidate_extensions(x);
    REQUIRE_FALSE(candidates.empty());
    for (const auto & r : candidates) {
        auto y = x.extended(r);
        CHECK(theta_accept(y, r) == theta_oracle(y, r));
        CHECK(theta_accept(y, first) == theta_oracle(y, first));
    }
}

TEST_CASE("theta agrees with the oracle and picks exactly one orbit")
{
    std::mt19937 rng{53};
    for (int trial = 0; trial < 150; ++trial) {
        auto x = trial % 2 ? random_partial(rng, 2, 2, 1 + trial % 6) : random_partial(rng, 2, 3, 1 + trial % 14);
        if (x.empty())
            continue;
        const int k = x.base().size();
        std::set<int> accepted;
        for (const auto & r : x.rectangles()) {
            const bool a = theta_accept(x, r);
            REQUIRE(a == theta_oracle(x, r));
            if (a)
                accepted.insert(r.middle());
        }
        REQUIRE_FALSE(accepted.empty());
        std::set<int> orbit;
        for (const auto & g : oracle::stabiliser(oracle::to_rects(x), k))
            orbit.insert(g[*accepted.begin()]);
        CHECK(accepted == orbit);
    }
}

TEST_CASE("theta is covariant")
{
    std::mt19937 rng{59};
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_partial(rng, 3, 3, 5 + trial % 20);
        auto g = oracle::random_permutation(rng, 9);
        auto y = x.permuted(g);
        for (const auto & r : x.rectangles())
            CHECK(theta_accept(x, r) == theta_accept(y, r.permuted(g)));
    }
}

TEST_CASE("enumerate with one row per rectangle")
{
    for (int m = 1; m <= 5; ++m) {
        auto report = enumerate(1, m);
        REQUIRE(report.structures.size() == 1);
        for (const auto & r : report.structures.front().rectangles()) {
            CHECK(bits::count(r.rows()) == 1);
            CHECK(r.cols() == bits::full(m));
        }
    }
}

TEST_CASE("enumeration matches generate-all-then-deduplicate")
{
    for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
        auto classes = oracle::full_structure_classes(n, m);
        auto report = enumerate(n, m);
        std::set<oracle::Structure> found;
        for (const auto & rs : report.structures)
            found.insert(oracle::structure_key(oracle::to_rects(rs), n * m));
        CHECK(report.structures.size() == classes.size());
        CHECK(found == classes);
    }
    CHECK(enumerate(2, 2).structures.size() == 3);
    CHECK(enumerate(2, 3).structures.size() == 9);
}

TEST_CASE("3x3 enumeration")
{
    auto report = enumerate(3, 3);
    REQUIRE(report.structures.size() == 184);
    std::set<std::vector<std::pair<int, int>>> certificates;
    for (const auto & rs : report.structures) {
        CHECK_NOTHROW(validate_full_structure(rs));
        certificates.insert(structure_certificate(rs));
    }
    CHECK(certificates.size() == 184);
    CHECK(report.stats.canonical_labelings < report.stats.theta_tests);

    SUBCASE("deterministic and independent of the worker count")
    {
        CHECK(enumerate(3, 3).structures == report.structures);
        auto parallel = enumerate(3, 3, {4});
        CHECK(parallel.structures == report.structures);
        CHECK(parallel.stats.accepted == report.stats.accepted);
    }
}

TEST_CASE("certificates identify isomorphic structures")
{
    std::mt19937 rng{61};
    for (const auto & rs : enumerate(2, 3).structures) {
        auto g = oracle::random_permutation(rng, 6);
        CHECK(structure_certificate(rs.permuted(g)) == structure_certificate(rs));
    }
}
