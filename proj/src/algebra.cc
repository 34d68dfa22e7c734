#include <rsenum/algebra.hh>

#include <algorithm>

using std::optional;
using std::to_string;
using std::vector;

namespace rsenum {

auto AxiomViolation::describe() const -> std::string
{
    return identity + " fails at (a,b,c) = (" + to_string(a + 1) + "," + to_string(b + 1) + "," + to_string(c + 1) + ")";
}

namespace {
    void require_same_order(const OperationTable & x, const OperationTable & y)
    {
        if (x.order() != y.order())
            throw std::invalid_argument("operation tables have different orders");
    }

    auto transpose(const vector<ElementSet> & rows) -> vector<ElementSet>
    {
        vector<ElementSet> result(rows.size(), 0);
        for (std::size_t a = 0; a < rows.size(); ++a)
            bits::for_each(rows[a], [&](int b) { result[b] |= bits::single(static_cast<int>(a)); });
        return result;
    }

    auto lifted_unchecked(const SCB & s, const Permutation & phi) -> SCB
    {
        const int k = s.order();
        auto inv = phi.inverse();
        OperationTable bullet{k}, circ{k};
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                bullet.set(a, b, inv(s.bullet(a, b)));
                circ.set(a, b, s.circ(phi(a), phi(b)));
            }
        return {std::move(bullet), std::move(circ)};
    }
}

auto find_scb_violation(const OperationTable & bullet, const OperationTable & circ) -> optional<AxiomViolation>
{
    require_same_order(bullet, circ);
    const int k = bullet.order();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) {
                if (circ(bullet(a, b), bullet(b, c)) != b)
                    return AxiomViolation{a, b, c, "(a*b)o(b*c) = b"};
                if (bullet(circ(a, b), circ(b, c)) != b)
                    return AxiomViolation{a, b, c, "(aob)*(boc) = b"};
            }
    return std::nullopt;
}

auto check_scb(const OperationTable & bullet, const OperationTable & circ) -> bool
{
    return ! find_scb_violation(bullet, circ);
}

auto find_central_violation(const OperationTable & op) -> optional<AxiomViolation>
{
    const int k = op.order();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                if (op(op(a, b), op(b, c)) != b)
                    return AxiomViolation{a, b, c, "(a*b)*(b*c) = b"};
    return std::nullopt;
}

auto check_central_groupoid(const OperationTable & op) -> bool
{
    if (! integer_sqrt(op.order()))
        return false;
    return ! find_central_violation(op);
}

auto integer_sqrt(int k) -> optional<int>
{
    for (int r = 0; r * r <= k; ++r)
        if (r * r == k)
            return r;
    return std::nullopt;
}

auto idempotent_count(const OperationTable & op) -> int
{
    int count = 0;
    for (int a = 0; a < op.order(); ++a)
        count += op(a, a) == a;
    return count;
}

auto is_idempotent(const OperationTable & op) -> bool
{
    return idempotent_count(op) == op.order();
}

auto is_associative(const OperationTable & op) -> bool
{
    const int k = op.order();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                if (op(op(a, b), c) != op(a, op(b, c)))
                    return false;
    return true;
}

auto is_anticommutative(const OperationTable & op) -> bool
{
    for (int a = 0; a < op.order(); ++a)
        for (int b = a + 1; b < op.order(); ++b)
            if (op(a, b) == op(b, a))
                return false;
    return true;
}

auto has_swap_property(const OperationTable & op) -> bool
{
    // Equivalent: the cells holding each value x form rows(x) x cols(x).
    const int k = op.order();
    vector<ElementSet> rows(k, 0), cols(k, 0);
    vector<int> cells(k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            rows[op(a, b)] |= bits::single(a);
            cols[op(a, b)] |= bits::single(b);
            ++cells[op(a, b)];
        }
    for (int x = 0; x < k; ++x)
        if (bits::count(rows[x]) * bits::count(cols[x]) != cells[x])
            return false;
    return true;
}

auto operation_format(const OperationTable & op) -> optional<std::pair<int, int>>
{
    if (! has_swap_property(op))
        return std::nullopt;
    const int k = op.order();
    vector<ElementSet> rows(k, 0), cols(k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            rows[op(a, b)] |= bits::single(a);
            cols[op(a, b)] |= bits::single(b);
        }
    optional<std::pair<int, int>> format;
    for (int x = 0; x < k; ++x) {
        std::pair<int, int> f{bits::count(rows[x]), bits::count(cols[x])};
        if (f.first == 0)
            return std::nullopt;
        if (format && *format != f)
            return std::nullopt;
        format = f;
    }
    return format;
}

auto square_map(const SCB & s) -> Permutation
{
    vector<int> images(s.order());
    vector<bool> hit(s.order(), false);
    for (int x = 0; x < s.order(); ++x) {
        images[x] = s.bullet(x, x);
        if (hit[images[x]])
            throw InvalidStructure("square map is not injective: " + to_string(x + 1) + " collides");
        hit[images[x]] = true;
    }
    return Permutation{std::move(images)};
}

auto lift(const SCB & s, const Permutation & phi) -> SCB
{
    if (phi.size() != s.order())
        throw std::invalid_argument("lifting permutation has the wrong size");
    auto result = lifted_unchecked(s, phi);
    if (auto v = find_scb_violation(result.bullet, result.circ))
        throw TheoryViolation("lifting is not a semicentral bigroupoid: " + v->describe());
    return result;
}

auto idempotent_lifting(const SCB & s) -> std::pair<SCB, Permutation>
{
    auto phi = square_map(s);
    auto lifted = lift(s, phi);
    if (! is_idempotent(lifted.bullet))
        throw TheoryViolation("lifting by the square map is not idempotent");
    return {std::move(lifted), std::move(phi)};
}

auto scb_to_rs(const SCB & s) -> PRS
{
    if (! is_idempotent(s.bullet) || ! is_idempotent(s.circ))
        throw std::invalid_argument("scb_to_rs needs an idempotent bigroupoid");
    if (auto v = find_scb_violation(s.bullet, s.circ))
        throw InvalidStructure("not a semicentral bigroupoid: " + v->describe());
    const int k = s.order();
    vector<Rectangle> rectangles;
    for (int x = 0; x < k; ++x) {
        ElementSet rows = 0, cols = 0;
        for (int a = 0; a < k; ++a) {
            rows |= bits::single(s.bullet(a, x));
            cols |= bits::single(s.bullet(x, a));
        }
        rectangles.emplace_back(rows, cols);
        if (rectangles.back().middle() != x)
            throw TheoryViolation("rectangle of " + to_string(x + 1) + " has a different middle");
    }
    const int n = bits::count(rectangles.front().rows());
    const int m = bits::count(rectangles.front().cols());
    if (n * m != k)
        throw TheoryViolation("rectangle format does not match the order");
    PRS rs{BaseSet{n, m}, std::move(rectangles)};
    validate_full_structure(rs);
    return rs;
}

auto rs_to_operations(const PRS & rs) -> SCB
{
    validate_full_structure(rs);
    const int k = rs.base().size();
    vector<const Rectangle *> by_middle(k, nullptr);
    vector<int> cover(static_cast<std::size_t>(k) * k, -1);
    for (const auto & r : rs.rectangles()) {
        by_middle[r.middle()] = &r;
        bits::for_each(r.rows(), [&](int a) { bits::for_each(r.cols(), [&](int b) { cover[a * k + b] = r.middle(); }); });
    }
    OperationTable bullet{k}, circ{k};
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            ElementSet meet = by_middle[s]->cols() & by_middle[t]->rows();
            bullet.set(s, t, bits::lowest(meet));
            circ.set(s, t, cover[s * k + t]);
        }
    SCB result{std::move(bullet), std::move(circ)};
    if (auto v = find_scb_violation(result.bullet, result.circ))
        throw TheoryViolation("operations of a rectangular structure fail the axioms: " + v->describe());
    return result;
}

auto scb_to_graph_pair(const SCB & s) -> GraphPair
{
    const int k = s.order();
    GraphPair gp{k};
    for (int a = 0; a < k; ++a)
        for (int c = 0; c < k; ++c) {
            gp.add_red(a, s.bullet(a, c));
            gp.add_blue(a, s.circ(a, c));
        }
    return gp;
}

auto graph_pair_to_scb(const GraphPair & gp) -> SCB
{
    const int k = gp.order;
    auto red_in = transpose(gp.red);
    auto blue_in = transpose(gp.blue);
    OperationTable bullet{k}, circ{k};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            ElementSet red_blue = gp.red[a] & blue_in[b];
            ElementSet blue_red = gp.blue[a] & red_in[b];
            if (bits::count(red_blue) != 1 || bits::count(blue_red) != 1)
                throw InvalidStructure("no unique 2-coloured 2-path from " + to_string(a + 1) + " to " + to_string(b + 1));
            bullet.set(a, b, bits::lowest(red_blue));
            circ.set(a, b, bits::lowest(blue_red));
        }
    return {std::move(bullet), std::move(circ)};
}

auto verify_product_J(const GraphPair & gp) -> bool
{
    auto red_in = transpose(gp.red);
    auto blue_in = transpose(gp.blue);
    for (int a = 0; a < gp.order; ++a)
        for (int b = 0; b < gp.order; ++b)
            if (bits::count(gp.red[a] & blue_in[b]) != 1 || bits::count(gp.blue[a] & red_in[b]) != 1)
                return false;
    return true;
}

auto square_is_J(const vector<ElementSet> & adjacency) -> bool
{
    auto in = transpose(adjacency);
    for (std::size_t a = 0; a < adjacency.size(); ++a)
        for (std::size_t b = 0; b < adjacency.size(); ++b)
            if (bits::count(adjacency[a] & in[b]) != 1)
                return false;
    return true;
}

auto operation_graph(const OperationTable & op) -> vector<ElementSet>
{
    vector<ElementSet> rows(op.order(), 0);
    for (int a = 0; a < op.order(); ++a)
        for (int c = 0; c < op.order(); ++c)
            rows[a] |= bits::single(op(a, c));
    return rows;
}

auto operation_digraph(const OperationTable & op) -> Digraph
{
    Digraph g{op.order()};
    auto rows = operation_graph(op);
    for (int a = 0; a < op.order(); ++a)
        bits::for_each(rows[a], [&](int b) { g.add_edge(a, b); });
    return g;
}

auto midpoint_operation(const vector<ElementSet> & adjacency) -> OperationTable
{
    const int k = static_cast<int>(adjacency.size());
    auto in = transpose(adjacency);
    OperationTable op{k};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            ElementSet mid = adjacency[a] & in[b];
            if (bits::count(mid) != 1)
                throw InvalidStructure("no unique 2-path from " + to_string(a + 1) + " to " + to_string(b + 1));
            op.set(a, b, bits::lowest(mid));
        }
    return op;
}

auto natural_central_groupoid(int n) -> OperationTable
{
    const int k = n * n;
    OperationTable op{k};
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            op.set(x, y, (x % n) * n + y / n);
    return op;
}

auto rectangular_bigroupoid(int rows, int cols) -> SCB
{
    const int k = rows * cols;
    OperationTable bullet{k}, circ{k};
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
            bullet.set(x, y, (x / cols) * cols + y % cols);
            circ.set(x, y, (y / cols) * cols + x % cols);
        }
    return {std::move(bullet), std::move(circ)};
}

}
