#include <rsenum/embed.hh>
#include <rsenum/filter.hh>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

using std::vector;

namespace rsenum {

auto to_string(Provenance p) -> std::string
{
    return p == Provenance::natural ? "natural" : "lifted";
}

namespace {
    auto as_digraph(const vector<ElementSet> & rows) -> Digraph
    {
        Digraph g{static_cast<int>(rows.size())};
        for (std::size_t a = 0; a < rows.size(); ++a)
            bits::for_each(rows[a], [&](int b) { g.add_edge(static_cast<int>(a), b); });
        return g;
    }

    auto conjugate(const Permutation & phi, const Permutation & g) -> Permutation
    {
        // x -> g(phi(g^-1(x)))
        return g.inverse().then(phi).then(g);
    }
}

auto graph_pair_isomorphisms(const PRS & rs) -> vector<Permutation>
{
    validate_full_structure(rs);
    auto gp = prs_to_graph_pair(rs);
    return all_isomorphisms(as_digraph(gp.blue), as_digraph(gp.red));
}

auto order2_isomorphisms(const vector<Permutation> & isomorphisms) -> vector<Permutation>
{
    vector<Permutation> result;
    for (const auto & phi : isomorphisms)
        if (phi.then(phi).is_identity())
            result.push_back(phi);
    return result;
}

auto conjugacy_orbit_representatives(const vector<Permutation> & perms, const vector<Permutation> & generators)
    -> vector<Permutation>
{
    vector<Permutation> sorted = perms;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const int count = static_cast<int>(sorted.size());
    vector<int> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (const auto & g : generators)
        for (int i = 0; i < count; ++i) {
            auto image = conjugate(sorted[i], g);
            auto it = std::lower_bound(sorted.begin(), sorted.end(), image);
            if (it == sorted.end() || *it != image)
                throw std::logic_error("lifting set is not closed under conjugation");
            int a = find(i), b = find(static_cast<int>(it - sorted.begin()));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    vector<Permutation> result;
    for (int i = 0; i < count; ++i)
        if (find(i) == i)
            result.push_back(sorted[i]);
    return result;
}

auto conjugacy_orbit_representatives(const vector<Permutation> & perms, const PRS & rs) -> vector<Permutation>
{
    return conjugacy_orbit_representatives(perms, prs_automorphisms(rs));
}

auto lifted_central_groupoid(const SCB & operations, const Permutation & phi) -> OperationTable
{
    const int k = operations.order();
    OperationTable table{k};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const int value = phi(operations.circ(a, b));
            if (value != operations.bullet(phi(a), phi(b)))
                throw TheoryViolation("phi(a o b) != phi(a) * phi(b) at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
            table.set(a, b, value);
        }
    if (auto v = find_central_violation(table))
        throw TheoryViolation("lifted table is not a central groupoid: " + v->describe());
    if (! square_is_J(operation_graph(table)))
        throw TheoryViolation("lifted table's graph does not satisfy A^2 = J");
    return table;
}

auto central_groupoids_from_rs(const PRS & rs, int index, FilterTrace * trace) -> vector<CentralGroupoidWitness>
{
    if (rs.base().rows() != rs.base().cols())
        throw std::invalid_argument("central groupoids need a square format");
    FilterTrace local;
    auto & t = trace ? *trace : local;
    t = {};
    t.left_partitioned = is_left_partitioned(rs);
    t.right_partitioned = is_right_partitioned(rs);

    auto isomorphisms = graph_pair_isomorphisms(rs);
    t.isomorphisms = static_cast<int>(isomorphisms.size());
    auto involutions = order2_isomorphisms(isomorphisms);
    t.order2 = static_cast<int>(involutions.size());
    if (involutions.empty())
        return {};
    auto representatives = conjugacy_orbit_representatives(involutions, rs);
    t.representatives = static_cast<int>(representatives.size());

    const auto operations = rs_to_operations(rs);
    const auto provenance = t.left_partitioned && t.right_partitioned ? Provenance::natural : Provenance::lifted;
    vector<CentralGroupoidWitness> result;
    for (auto & phi : representatives) {
        auto table = lifted_central_groupoid(operations, phi);
        result.push_back({index, std::move(phi), std::move(table), provenance});
    }
    return result;
}

auto central_groupoid_certificate(const OperationTable & op) -> vector<std::pair<int, int>>
{
    return canonicalize(operation_digraph(op)).canonical_form;
}

auto filter_central_groupoids(int n, vector<PRS> structures, int jobs) -> CentralGroupoidReport
{
    CentralGroupoidReport report;
    report.n = n;
    report.structures = std::move(structures);
    const auto & rs = report.structures;

    vector<FilterTrace> traces(rs.size());
    vector<vector<CentralGroupoidWitness>> found(rs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < rs.size();)
            found[i] = central_groupoids_from_rs(rs[i], static_cast<int>(i), &traces[i]);
    };
    // Exceptions from a worker are rethrown here after all threads finish.
    vector<std::exception_ptr> errors(std::max(1, jobs));
    vector<std::thread> workers;
    for (int j = 1; j < jobs; ++j)
        workers.emplace_back([&, j] {
            try {
                work();
            }
            catch (...) {
                errors[j] = std::current_exception();
            }
        });
    try {
        work();
    }
    catch (...) {
        errors[0] = std::current_exception();
    }
    for (auto & w : workers)
        w.join();
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);

    auto & f = report.funnel;
    const auto natural_certificate = central_groupoid_certificate(natural_central_groupoid(n));
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto & t = traces[i];
        const auto & w = found[i];
        ++f.structures;
        if (t.left_partitioned && t.right_partitioned) {
            ++f.doubly_partitioned;
            if (w.size() != 1 || central_groupoid_certificate(w.front().table) != natural_certificate)
                throw TheoryViolation("doubly partitioned structure " + std::to_string(i) + " does not give exactly the natural central groupoid");
            ++f.natural_witnesses;
        }
        else if (t.left_partitioned || t.right_partitioned) {
            ++f.singly_partitioned;
            f.singly_partitioned_with_isomorphic_pair += t.isomorphisms > 0;
            f.singly_partitioned_witnesses += static_cast<int>(w.size());
            if (! w.empty())
                throw TheoryViolation("singly partitioned structure " + std::to_string(i) + " gives a central groupoid");
        }
        else {
            ++f.non_partitioned;
            if (t.isomorphisms > 0) {
                ++f.non_partitioned_with_isomorphic_pair;
                f.non_partitioned_without_order2 += t.order2 == 0;
                if (t.order2 > 0)
                    ++f.order2_histogram[t.order2];
            }
            f.unnatural_representatives += t.representatives;
            f.unnatural_witnesses += static_cast<int>(w.size());
        }
        for (const auto & x : w)
            report.witnesses.push_back(x);
    }
    f.witnesses = static_cast<int>(report.witnesses.size());

    // Defence in depth: the witnesses must be pairwise non-isomorphic.
    vector<std::pair<vector<std::pair<int, int>>, std::size_t>> certificates;
    for (std::size_t i = 0; i < report.witnesses.size(); ++i)
        certificates.emplace_back(central_groupoid_certificate(report.witnesses[i].table), i);
    std::sort(certificates.begin(), certificates.end());
    for (std::size_t i = 1; i < certificates.size(); ++i)
        if (certificates[i].first == certificates[i - 1].first)
            throw TheoryViolation("witnesses " + std::to_string(certificates[i - 1].second) + " and "
                + std::to_string(certificates[i].second) + " are isomorphic");
    return report;
}

auto central_groupoid_report(int n, int jobs) -> CentralGroupoidReport
{
    if (n < 1)
        throw std::invalid_argument("n must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    auto enumeration = enumerate(n, n, {jobs});
    auto report = filter_central_groupoids(n, std::move(enumeration.structures), jobs);
    report.enumeration = enumeration.stats;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

auto enumerate_central_groupoids(int n, int jobs) -> vector<CentralGroupoidWitness>
{
    return central_groupoid_report(n, jobs).witnesses;
}

}
