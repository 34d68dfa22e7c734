#include <rsenum/canon.hh>

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

using std::optional;
using std::pair;
using std::vector;

namespace rsenum {

Digraph::Digraph(int nodes) : out_(nodes, 0), in_(nodes, 0)
{
    if (nodes < 0 || nodes > 64)
        throw std::invalid_argument("digraph must have between 0 and 64 nodes, got " + std::to_string(nodes));
}

void Digraph::add_edge(int from, int to)
{
    if (from < 0 || to < 0 || from >= size() || to >= size())
        throw std::out_of_range("edge endpoint out of range");
    out_[from] |= bits::single(to);
    in_[to] |= bits::single(from);
}

auto Digraph::edge_count() const -> int
{
    int total = 0;
    for (auto row : out_)
        total += bits::count(row);
    return total;
}

auto Digraph::edges() const -> vector<pair<int, int>>
{
    vector<pair<int, int>> result;
    for (int u = 0; u < size(); ++u)
        bits::for_each(out_[u], [&](int v) { result.emplace_back(u, v); });
    return result;
}

auto Digraph::relabeled(const Permutation & p) const -> Digraph
{
    if (p.size() != size())
        throw std::invalid_argument("relabelling has the wrong size");
    Digraph result{size()};
    for (int u = 0; u < size(); ++u) {
        result.out_[p(u)] = p.apply(out_[u]);
        result.in_[p(u)] = p.apply(in_[u]);
    }
    return result;
}

auto Digraph::is_automorphism(const Permutation & p) const -> bool
{
    if (p.size() != size())
        return false;
    for (int u = 0; u < size(); ++u)
        if (out_[p(u)] != p.apply(out_[u]))
            return false;
    return true;
}

namespace {
    constexpr int keep_going = INT_MAX;

    auto mix(std::uint64_t h, std::uint64_t v) -> std::uint64_t
    {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9ULL;
        return h ^ (h >> 29);
    }

    using Cells = vector<ElementSet>;

    class Searcher
    {
    public:
        Searcher(const Digraph & g, bool want_canonical, SearchStatistics * stats) :
            g_(g),
            k_(g.size()),
            want_canonical_(want_canonical),
            stats_(stats),
            signature_(static_cast<std::size_t>(k_) * (2 * k_ + 1))
        {
        }

        void run()
        {
            Cells cells;
            if (k_ > 0)
                cells.push_back(bits::full(k_));
            vector<std::uint64_t> trace;
            vector<int> path;
            search(cells, trace, path);
        }

        vector<int> best_order;
        vector<Permutation> generators;

    private:
        // Refines to the coarsest equitable partition finer than `cells`,
        // splitting each cell by (loop, out- and in-degree into every cell)
        // and ordering fragments by that signature. Returns a hash of every
        // signature seen, which is invariant under relabelling.
        auto refine(Cells & cells) -> std::uint64_t
        {
            std::uint64_t h = 0x51ed270b27c4b1f3ULL;
            vector<int> nodes;
            while (static_cast<int>(cells.size()) < k_) {
                const int c = static_cast<int>(cells.size());
                const int width = 2 * c + 1;
                for (int v = 0; v < k_; ++v) {
                    int * sig = &signature_[static_cast<std::size_t>(v) * width];
                    sig[0] = g_.has_edge(v, v) ? 1 : 0;
                    for (int i = 0; i < c; ++i) {
                        sig[1 + 2 * i] = bits::count(g_.out(v) & cells[i]);
                        sig[2 + 2 * i] = bits::count(g_.in(v) & cells[i]);
                    }
                }
                auto sig_of = [&](int v) { return &signature_[static_cast<std::size_t>(v) * width]; };
                auto less = [&](int a, int b) {
                    return std::lexicographical_compare(sig_of(a), sig_of(a) + width, sig_of(b), sig_of(b) + width);
                };
                auto same = [&](int a, int b) { return std::equal(sig_of(a), sig_of(a) + width, sig_of(b)); };

                Cells refined;
                refined.reserve(k_);
                for (auto cell : cells) {
                    nodes = bits::elements(cell);
                    std::sort(nodes.begin(), nodes.end(), less);
                    std::size_t start = 0;
                    for (std::size_t i = 1; i <= nodes.size(); ++i) {
                        if (i < nodes.size() && same(nodes[start], nodes[i]))
                            continue;
                        ElementSet fragment = 0;
                        for (std::size_t j = start; j < i; ++j)
                            fragment |= bits::single(nodes[j]);
                        refined.push_back(fragment);
                        h = mix(h, i - start);
                        for (int j = 0; j < width; ++j)
                            h = mix(h, static_cast<std::uint64_t>(sig_of(nodes[start])[j]));
                        start = i;
                    }
                }
                const bool split = refined.size() != cells.size();
                cells = std::move(refined);
                h = mix(h, cells.size());
                if (! split)
                    break;
            }
            return h;
        }

        auto relabeled_rows(const vector<int> & order) const -> vector<ElementSet>
        {
            vector<int> position(k_);
            for (int i = 0; i < k_; ++i)
                position[order[i]] = i;
            vector<ElementSet> rows(k_, 0);
            for (int u = 0; u < k_; ++u)
                bits::for_each(g_.out(u), [&](int v) { rows[position[u]] |= bits::single(position[v]); });
            return rows;
        }

        auto leaf_permutation(const vector<int> & from, const vector<int> & to) const -> Permutation
        {
            vector<int> images(k_);
            for (int i = 0; i < k_; ++i)
                images[from[i]] = to[i];
            return Permutation{std::move(images)};
        }

        void add_generator(Permutation p)
        {
            if (p.is_identity())
                return;
            if (std::find(generators.begin(), generators.end(), p) == generators.end())
                generators.push_back(std::move(p));
        }

        // Union-find over the orbits of the subgroup generated by the
        // automorphisms found so far that fix every node of `path`.
        auto stabiliser_orbits(const vector<int> & path) const -> vector<int>
        {
            vector<int> parent(k_);
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            };
            for (const auto & p : generators) {
                bool fixes = std::all_of(path.begin(), path.end(), [&](int v) { return p(v) == v; });
                if (! fixes)
                    continue;
                for (int x = 0; x < k_; ++x) {
                    int a = find(x), b = find(p(x));
                    if (a != b)
                        parent[std::max(a, b)] = std::min(a, b);
                }
            }
            for (int x = 0; x < k_; ++x)
                parent[x] = find(x);
            return parent;
        }

        static auto compare_traces(const vector<std::uint64_t> & a, const vector<std::uint64_t> & b) -> int
        {
            if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()))
                return -1;
            if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()))
                return 1;
            return 0;
        }

        auto search(Cells cells, vector<std::uint64_t> & trace, vector<int> & path) -> int
        {
            const int depth = static_cast<int>(path.size());
            trace.resize(depth);
            trace.push_back(refine(cells));
            if (stats_)
                ++stats_->tree_nodes;

            if (have_first_) {
                bool matches_first = trace.size() <= first_trace_.size()
                    && std::equal(trace.begin(), trace.end(), first_trace_.begin());
                if (! matches_first) {
                    if (! want_canonical_)
                        return keep_going;
                    vector<std::uint64_t> best_prefix(best_trace_.begin(),
                        best_trace_.begin() + std::min(best_trace_.size(), trace.size()));
                    if (compare_traces(trace, best_prefix) > 0)
                        return keep_going;
                }
            }

            if (static_cast<int>(cells.size()) == k_)
                return leaf(cells, trace, path);

            auto target = std::find_if(cells.begin(), cells.end(), [](ElementSet c) { return bits::count(c) > 1; });
            const std::size_t target_index = target - cells.begin();
            const ElementSet target_cell = *target;

            vector<int> explored;
            for (int w : bits::elements(target_cell)) {
                if (! explored.empty() && ! generators.empty()) {
                    auto orbit = stabiliser_orbits(path);
                    if (std::any_of(explored.begin(), explored.end(), [&](int e) { return orbit[e] == orbit[w]; }))
                        continue;
                }
                explored.push_back(w);

                Cells child;
                child.reserve(cells.size() + 1);
                child.insert(child.end(), cells.begin(), cells.begin() + target_index);
                child.push_back(bits::single(w));
                child.push_back(target_cell & ~bits::single(w));
                child.insert(child.end(), cells.begin() + target_index + 1, cells.end());

                path.push_back(w);
                int back_to = search(std::move(child), trace, path);
                path.pop_back();
                trace.resize(depth + 1);
                if (back_to < depth)
                    return back_to;
            }
            return keep_going;
        }

        auto leaf(const Cells & cells, const vector<std::uint64_t> & trace, const vector<int> & path) -> int
        {
            if (stats_)
                ++stats_->leaves;
            vector<int> order(k_);
            for (int i = 0; i < k_; ++i)
                order[i] = bits::lowest(cells[i]);
            auto rows = relabeled_rows(order);

            if (! have_first_) {
                have_first_ = true;
                first_trace_ = best_trace_ = trace;
                first_order_ = best_order = order;
                first_rows_ = best_rows_ = std::move(rows);
                first_path_ = path;
                return keep_going;
            }

            if (trace == first_trace_ && rows == first_rows_) {
                add_generator(leaf_permutation(first_order_, order));
                // Everything below the first point where this branch left
                // the first path is an image of an explored subtree.
                std::size_t common = 0;
                while (common < path.size() && common < first_path_.size() && path[common] == first_path_[common])
                    ++common;
                return static_cast<int>(common);
            }

            if (want_canonical_) {
                int c = compare_traces(trace, best_trace_);
                if (c == 0)
                    c = rows < best_rows_ ? -1 : (rows == best_rows_ ? 0 : 1);
                if (c == 0)
                    add_generator(leaf_permutation(best_order, order));
                else if (c < 0) {
                    best_trace_ = trace;
                    best_order = std::move(order);
                    best_rows_ = std::move(rows);
                }
            }
            return keep_going;
        }

        const Digraph & g_;
        const int k_;
        const bool want_canonical_;
        SearchStatistics * stats_;
        vector<int> signature_;

        bool have_first_ = false;
        vector<std::uint64_t> first_trace_, best_trace_;
        vector<int> first_order_;
        vector<ElementSet> first_rows_, best_rows_;
        vector<int> first_path_;
    };
}

auto canonicalize(const Digraph & g, SearchStatistics * stats) -> CanonicalResult
{
    const int k = g.size();
    if (k == 0)
        return {Permutation::identity(0), {}, {}};
    Searcher searcher{g, true, stats};
    searcher.run();

    vector<int> labels(k);
    for (int i = 0; i < k; ++i)
        labels[searcher.best_order[i]] = i;
    Permutation labeling{std::move(labels)};
    auto form = g.relabeled(labeling).edges();
    return {std::move(labeling), std::move(form), std::move(searcher.generators)};
}

auto automorphism_generators(const Digraph & g, SearchStatistics * stats) -> vector<Permutation>
{
    if (g.size() == 0)
        return {};
    Searcher searcher{g, false, stats};
    searcher.run();
    return std::move(searcher.generators);
}

auto are_isomorphic(const Digraph & g1, const Digraph & g2) -> optional<Permutation>
{
    if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count())
        return std::nullopt;
    auto c1 = canonicalize(g1);
    auto c2 = canonicalize(g2);
    if (c1.canonical_form != c2.canonical_form)
        return std::nullopt;
    // g1 --labeling1--> canonical <--labeling2-- g2
    return c1.labeling.then(c2.labeling.inverse());
}

auto all_isomorphisms(const Digraph & g1, const Digraph & g2) -> vector<Permutation>
{
    if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count())
        return {};
    auto c1 = canonicalize(g1);
    auto c2 = canonicalize(g2);
    if (c1.canonical_form != c2.canonical_form)
        return {};
    auto witness = c1.labeling.then(c2.labeling.inverse());
    vector<Permutation> result;
    for (const auto & a : group_elements(c1.automorphism_generators, g1.size()))
        result.push_back(a.then(witness));
    std::sort(result.begin(), result.end());
    return result;
}

auto orbit_representatives(const vector<Permutation> & generators, int points) -> vector<int>
{
    vector<int> parent(points);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto & p : generators)
        for (int x = 0; x < points; ++x) {
            int a = find(x), b = find(p(x));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    for (int x = 0; x < points; ++x)
        parent[x] = find(x);
    return parent;
}

auto group_elements(const vector<Permutation> & generators, int points, std::size_t limit) -> vector<Permutation>
{
    std::set<Permutation> seen{Permutation::identity(points)};
    vector<Permutation> frontier{Permutation::identity(points)};
    while (! frontier.empty()) {
        vector<Permutation> next;
        for (const auto & e : frontier)
            for (const auto & g : generators) {
                auto p = e.then(g);
                if (seen.insert(p).second) {
                    if (seen.size() > limit)
                        throw std::length_error("group has more than " + std::to_string(limit) + " elements");
                    next.push_back(std::move(p));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}
