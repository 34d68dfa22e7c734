#include <rsenum/embed.hh>
#include <rsenum/orderly.hh>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

using std::vector;

namespace rsenum {

auto EnumerationStats::operator+=(const EnumerationStats & o) -> EnumerationStats &
{
    tree_nodes += o.tree_nodes;
    candidates += o.candidates;
    theta_tests += o.theta_tests;
    rejected_by_value += o.rejected_by_value;
    accepted_by_value += o.accepted_by_value;
    accepted_by_single_orbit += o.accepted_by_single_orbit;
    canonical_labelings += o.canonical_labelings;
    automorphism_searches += o.automorphism_searches;
    accepted += o.accepted;
    return *this;
}

namespace {
    auto v1(const PRS & x, int middle) -> int
    {
        int count = 0;
        for (const auto & q : x.rectangles())
            count += bits::contains(q.rows(), middle);
        return count;
    }

    auto v2(const PRS & x, int middle) -> int
    {
        int count = 0;
        for (const auto & q : x.rectangles())
            count += bits::contains(q.cols(), middle);
        return count;
    }

    void fill_v3(const PRS & x, const Rectangle & r, CombinatorialValue & value)
    {
        value.row_intersections.clear();
        value.col_intersections.clear();
        for (const auto & q : x.rectangles()) {
            value.row_intersections.push_back(bits::count(r.rows() & q.rows()));
            value.col_intersections.push_back(bits::count(r.cols() & q.cols()));
        }
        std::sort(value.row_intersections.begin(), value.row_intersections.end());
        std::sort(value.col_intersections.begin(), value.col_intersections.end());
    }

    // Enumerates k-subsets of `pool` (ascending) whose members each hit a
    // distinct, not yet hit, set of indices in `hits`, and which together
    // hit every index in `required`.
    template <typename F>
    void choose(ElementSet pool, int k, std::uint64_t hit, std::uint64_t required, ElementSet chosen,
        const vector<std::uint64_t> & hits, F && f)
    {
        if (k == 0) {
            if (hit == required)
                f(chosen);
            return;
        }
        if (bits::count(pool) < k)
            return;
        while (pool) {
            const int a = bits::lowest(pool);
            pool &= pool - 1;
            if (hits[a] & hit)
                continue;
            choose(pool, k - 1, hit | hits[a], required, chosen | bits::single(a), hits, f);
            if (bits::count(pool) < k)
                break;
        }
    }
}

auto combinatorial_value(const PRS & x, const Rectangle & r) -> CombinatorialValue
{
    if (! x.contains(r))
        throw std::invalid_argument("combinatorial value requested for a rectangle outside the structure");
    CombinatorialValue value;
    value.rows_through_middle = v1(x, r.middle());
    value.cols_through_middle = v2(x, r.middle());
    fill_v3(x, r, value);
    return value;
}

auto candidate_extensions(const PRS & x) -> vector<Rectangle>
{
    const auto & base = x.base();
    const int k = base.size();
    const auto & rects = x.rectangles();
    const std::uint64_t every_rectangle = bits::full(static_cast<int>(rects.size()));

    // in_cols[a]: rectangles whose cols contain a; in_rows likewise.
    vector<std::uint64_t> in_cols(k, 0), in_rows(k, 0);
    for (std::size_t i = 0; i < rects.size(); ++i) {
        bits::for_each(rects[i].cols(), [&](int a) { in_cols[a] |= std::uint64_t{1} << i; });
        bits::for_each(rects[i].rows(), [&](int a) { in_rows[a] |= std::uint64_t{1} << i; });
    }

    vector<Rectangle> result;
    bits::for_each(base.all() & ~x.middles(), [&](int middle) {
        const ElementSet m = bits::single(middle);
        // (a, middle) must be uncovered for every row a.
        ElementSet row_pool = 0;
        for (int a = 0; a < k; ++a)
            if (a != middle && ! bits::contains(x.covered_from(a), middle) && ! (in_cols[a] & in_cols[middle]))
                row_pool |= bits::single(a);

        choose(row_pool, base.rows() - 1, in_cols[middle], every_rectangle, m, in_cols, [&](ElementSet rows) {
            ElementSet forbidden = rows;
            bits::for_each(rows, [&](int a) { forbidden |= x.covered_from(a); });
            ElementSet col_pool = 0;
            bits::for_each(base.all() & ~forbidden, [&](int b) {
                if (! (in_rows[b] & in_rows[middle]))
                    col_pool |= bits::single(b);
            });
            choose(col_pool, base.cols() - 1, in_rows[middle], every_rectangle, m, in_rows, [&](ElementSet cols) {
                result.emplace_back(rows, cols);
            });
        });
    });
    std::sort(result.begin(), result.end());
    return result;
}

auto orbit_representatives(const vector<Rectangle> & candidates, const vector<Permutation> & generators)
    -> vector<Rectangle>
{
    const int count = static_cast<int>(candidates.size());
    vector<int> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (const auto & g : generators)
        for (int i = 0; i < count; ++i) {
            auto image = candidates[i].permuted(g);
            auto it = std::lower_bound(candidates.begin(), candidates.end(), image);
            if (it == candidates.end() || *it != image)
                throw std::logic_error("candidate set is not closed under the stabiliser");
            int a = find(i), b = find(static_cast<int>(it - candidates.begin()));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    vector<Rectangle> result;
    for (int i = 0; i < count; ++i)
        if (find(i) == i)
            result.push_back(candidates[i]);
    return result;
}

auto theta_decide(const PRS & x_new, const Rectangle & r_new, EnumerationStats * stats) -> ThetaDecision
{
    EnumerationStats scratch;
    auto & s = stats ? *stats : scratch;
    const auto & rects = x_new.rectangles();
    const auto self = x_new.index_of(r_new);
    if (! self)
        throw std::invalid_argument("theta test for a rectangle outside the structure");

    // Stage 1 and 2: counts through the middle.
    vector<std::pair<int, int>> first(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i)
        first[i] = {v1(x_new, rects[i].middle()), v2(x_new, rects[i].middle())};
    const auto mine = first[*self];
    vector<int> tied;
    for (std::size_t i = 0; i < rects.size(); ++i) {
        if (first[i] < mine) {
            ++s.rejected_by_value;
            return {false, std::nullopt};
        }
        if (first[i] == mine)
            tied.push_back(static_cast<int>(i));
    }

    // Stage 3: intersection multisets, only among the tied rectangles.
    if (tied.size() > 1) {
        vector<CombinatorialValue> third(tied.size());
        CombinatorialValue own;
        fill_v3(x_new, r_new, own);
        vector<int> still_tied;
        for (std::size_t t = 0; t < tied.size(); ++t) {
            fill_v3(x_new, rects[tied[t]], third[t]);
            auto c = third[t] <=> own;
            if (c < 0) {
                ++s.rejected_by_value;
                return {false, std::nullopt};
            }
            if (c == 0)
                still_tied.push_back(tied[t]);
        }
        tied = std::move(still_tied);
    }
    if (tied.size() == 1) {
        ++s.accepted_by_value;
        return {true, std::nullopt};
    }

    // Several minimal rectangles: if they form one orbit, theta is that orbit.
    ++s.automorphism_searches;
    auto stabiliser = prs_automorphisms(x_new);
    auto orbit = orbit_representatives(stabiliser, x_new.base().size());
    const int own_orbit = orbit[r_new.middle()];
    if (std::all_of(tied.begin(), tied.end(), [&](int i) { return orbit[rects[i].middle()] == own_orbit; })) {
        ++s.accepted_by_single_orbit;
        return {true, std::move(stabiliser)};
    }

    ++s.canonical_labelings;
    auto canon = canonicalize_prs(x_new);
    int chosen = tied.front();
    for (int i : tied)
        if (canon.canonical.labeling(canon.embedded.rectangle_node(rects[i]))
            < canon.canonical.labeling(canon.embedded.rectangle_node(rects[chosen])))
            chosen = i;
    const bool accepted = orbit[rects[chosen].middle()] == own_orbit;
    return {accepted, std::move(stabiliser)};
}

auto theta_accept(const PRS & x_new, const Rectangle & r_new) -> bool
{
    return theta_decide(x_new, r_new).accepted;
}

auto structure_certificate(const PRS & x) -> vector<std::pair<int, int>>
{
    return canonicalize(embed(x).graph).canonical_form;
}

namespace {
    struct SearchNode
    {
        PRS structure;
        vector<Permutation> stabiliser;
    };

    class Generator
    {
    public:
        // Children of `node` that pass theta, with their stabilisers; full
        // structures go straight to `done`.
        auto children(const SearchNode & node, vector<PRS> & done) -> vector<SearchNode>
        {
            ++stats.tree_nodes;
            vector<SearchNode> result;
            auto candidates = candidate_extensions(node.structure);
            stats.candidates += static_cast<long>(candidates.size());
            for (const auto & r : orbit_representatives(candidates, node.stabiliser)) {
                ++stats.theta_tests;
                auto extended = node.structure.extended(r);
                auto decision = theta_decide(extended, r, &stats);
                if (! decision.accepted)
                    continue;
                ++stats.accepted;
                if (extended.is_full()) {
                    done.push_back(std::move(extended));
                    continue;
                }
                if (! decision.stabiliser) {
                    ++stats.automorphism_searches;
                    decision.stabiliser = prs_automorphisms(extended);
                }
                result.push_back({std::move(extended), std::move(*decision.stabiliser)});
            }
            return result;
        }

        void depth_first(const SearchNode & node, vector<PRS> & done)
        {
            for (const auto & child : children(node, done))
                depth_first(child, done);
        }

        EnumerationStats stats;
    };
}

auto enumerate(int rows, int cols, const EnumerationOptions & options) -> EnumerationReport
{
    const auto start = std::chrono::steady_clock::now();
    BaseSet base{rows, cols};
    EnumerationReport report;
    report.rows = rows;
    report.cols = cols;

    PRS empty{base};
    Generator root;
    SearchNode root_node{empty, prs_automorphisms(empty)};
    ++root.stats.automorphism_searches;

    const int jobs = std::max(1, options.jobs);
    vector<PRS> found;
    if (jobs == 1) {
        root.depth_first(root_node, found);
        report.stats = root.stats;
    }
    else {
        // Breadth-first until there is enough independent work, then hand
        // whole subtrees to workers.
        vector<SearchNode> frontier{root_node};
        while (! frontier.empty() && frontier.size() < static_cast<std::size_t>(8 * jobs)) {
            vector<SearchNode> next;
            for (const auto & node : frontier)
                for (auto & child : root.children(node, found))
                    next.push_back(std::move(child));
            frontier = std::move(next);
        }
        report.stats = root.stats;

        std::atomic<std::size_t> next_index{0};
        std::mutex merge;
        vector<std::thread> workers;
        for (int j = 0; j < jobs; ++j)
            workers.emplace_back([&] {
                Generator local;
                vector<PRS> local_found;
                for (std::size_t i; (i = next_index++) < frontier.size();)
                    local.depth_first(frontier[i], local_found);
                std::lock_guard lock{merge};
                report.stats += local.stats;
                for (auto & x : local_found)
                    found.push_back(std::move(x));
            });
        for (auto & w : workers)
            w.join();
    }

    vector<std::pair<vector<std::pair<int, int>>, PRS>> keyed;
    keyed.reserve(found.size());
    for (auto & x : found) {
        auto key = structure_certificate(x);
        keyed.emplace_back(std::move(key), std::move(x));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto & a, const auto & b) { return a.first < b.first; });
    for (auto & [key, x] : keyed)
        report.structures.push_back(std::move(x));

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}
