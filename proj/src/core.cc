#include <rsenum/core.hh>

#include <algorithm>
#include <numeric>
#include <string>

using std::to_string;
using std::vector;

namespace rsenum {

auto bits::elements(ElementSet s) -> vector<int>
{
    vector<int> result;
    for_each(s, [&](int x) { result.push_back(x); });
    return result;
}

auto bits::from_elements(const vector<int> & xs) -> ElementSet
{
    ElementSet s = 0;
    for (int x : xs) {
        if (x < 0 || x >= 64)
            throw std::out_of_range("element " + to_string(x) + " out of range");
        s |= single(x);
    }
    return s;
}

BaseSet::BaseSet(int rows, int cols) : rows_(rows), cols_(cols)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("format must be positive, got " + to_string(rows) + "x" + to_string(cols));
    if (rows * cols > max_base_size)
        throw std::invalid_argument("base set of size " + to_string(rows * cols) + " exceeds the supported maximum of "
            + to_string(max_base_size));
}

Rectangle::Rectangle(ElementSet rows, ElementSet cols) : rows_(rows), cols_(cols)
{
    if (bits::count(rows & cols) != 1)
        throw InvalidStructure("rectangle rows and cols must meet in exactly one element");
}

void Rectangle::validate(const BaseSet & base) const
{
    if ((rows_ | cols_) & ~base.all())
        throw InvalidStructure("rectangle uses elements outside the base set");
    if (bits::count(rows_) != base.rows() || bits::count(cols_) != base.cols())
        throw InvalidStructure("rectangle has format (" + to_string(bits::count(rows_)) + "," + to_string(bits::count(cols_))
            + "), expected (" + to_string(base.rows()) + "," + to_string(base.cols()) + ")");
}

auto Rectangle::permuted(const Permutation & g) const -> Rectangle
{
    return Rectangle{g.apply(rows_), g.apply(cols_)};
}

auto rectangle_middle(const Rectangle & r) -> int
{
    return r.middle();
}

Permutation::Permutation(vector<int> images) : images_(std::move(images))
{
    vector<bool> seen(images_.size(), false);
    for (int y : images_) {
        if (y < 0 || y >= size() || seen[y])
            throw std::invalid_argument("not a permutation");
        seen[y] = true;
    }
}

auto Permutation::identity(int k) -> Permutation
{
    vector<int> images(k);
    std::iota(images.begin(), images.end(), 0);
    return Permutation{std::move(images)};
}

auto Permutation::apply(ElementSet s) const -> ElementSet
{
    ElementSet result = 0;
    bits::for_each(s, [&](int x) { result |= bits::single(images_[x]); });
    return result;
}

auto Permutation::then(const Permutation & next) const -> Permutation
{
    if (next.size() != size())
        throw std::invalid_argument("permutation sizes differ");
    Permutation result;
    result.images_.resize(images_.size());
    for (int x = 0; x < size(); ++x)
        result.images_[x] = next.images_[images_[x]];
    return result;
}

auto Permutation::inverse() const -> Permutation
{
    Permutation result;
    result.images_.resize(images_.size());
    for (int x = 0; x < size(); ++x)
        result.images_[images_[x]] = x;
    return result;
}

auto Permutation::is_identity() const noexcept -> bool
{
    for (int x = 0; x < size(); ++x)
        if (images_[x] != x)
            return false;
    return true;
}

auto Permutation::order() const -> long
{
    long result = 1;
    for (const auto & c : cycles())
        result = std::lcm(result, static_cast<long>(c.size()));
    return result;
}

auto Permutation::cycles() const -> vector<vector<int>>
{
    vector<vector<int>> result;
    vector<bool> seen(images_.size(), false);
    for (int x = 0; x < size(); ++x) {
        if (seen[x] || images_[x] == x)
            continue;
        vector<int> cycle;
        for (int y = x; ! seen[y]; y = images_[y]) {
            seen[y] = true;
            cycle.push_back(y);
        }
        result.push_back(std::move(cycle));
    }
    return result;
}

PartialRectangularStructure::PartialRectangularStructure(BaseSet base) :
    base_(base),
    covered_(base.size(), 0)
{
}

PartialRectangularStructure::PartialRectangularStructure(BaseSet base, vector<Rectangle> rectangles) :
    PartialRectangularStructure(base)
{
    std::sort(rectangles.begin(), rectangles.end());
    for (const auto & r : rectangles) {
        r.validate(base_);
        for (const auto & q : rectangles_)
            if (q == r)
                throw InvalidStructure("duplicate rectangle");
        if (! is_valid_extension(r))
            throw InvalidStructure("rectangle with middle " + to_string(r.middle() + 1)
                + " violates the intersection or single-cover axiom");
        add_unchecked(r);
    }
}

auto PartialRectangularStructure::contains(const Rectangle & r) const -> bool
{
    return index_of(r).has_value();
}

auto PartialRectangularStructure::index_of(const Rectangle & r) const -> std::optional<int>
{
    auto it = std::lower_bound(rectangles_.begin(), rectangles_.end(), r);
    if (it == rectangles_.end() || *it != r)
        return std::nullopt;
    return static_cast<int>(it - rectangles_.begin());
}

auto PartialRectangularStructure::is_valid_extension(const Rectangle & r) const -> bool
{
    // (m, m) would be covered twice.
    if (middles_ & bits::single(r.middle()))
        return false;
    bool disjoint = true;
    bits::for_each(r.rows(), [&](int a) {
        if (covered_[a] & r.cols())
            disjoint = false;
    });
    if (! disjoint)
        return false;
    for (const auto & q : rectangles_)
        if (bits::count(q.rows() & r.cols()) != 1 || bits::count(r.rows() & q.cols()) != 1)
            return false;
    return true;
}

auto PartialRectangularStructure::extended(const Rectangle & r) const -> PartialRectangularStructure
{
    r.validate(base_);
    if (! is_valid_extension(r))
        throw InvalidStructure("not a valid extension");
    PartialRectangularStructure result = *this;
    result.add_unchecked(r);
    return result;
}

void PartialRectangularStructure::add_unchecked(const Rectangle & r)
{
    rectangles_.insert(std::upper_bound(rectangles_.begin(), rectangles_.end(), r), r);
    bits::for_each(r.rows(), [&](int a) { covered_[a] |= r.cols(); });
    middles_ |= bits::single(r.middle());
}

auto PartialRectangularStructure::permuted(const Permutation & g) const -> PartialRectangularStructure
{
    PartialRectangularStructure result{base_};
    vector<Rectangle> images;
    images.reserve(rectangles_.size());
    for (const auto & r : rectangles_)
        images.push_back(r.permuted(g));
    std::sort(images.begin(), images.end());
    for (const auto & r : images)
        result.add_unchecked(r);
    return result;
}

auto prs_is_valid_extension(const PRS & x, const Rectangle & r) -> bool
{
    return x.is_valid_extension(r);
}

namespace {
    void require_full(const PRS & rs)
    {
        if (! rs.is_full())
            throw InvalidStructure("structure is not full: " + to_string(rs.size()) + " of "
                + to_string(rs.base().size()) + " rectangles");
    }

    template <typename Side>
    auto sides_partition(const PRS & rs, Side side) -> bool
    {
        require_full(rs);
        ElementSet seen = 0;
        vector<ElementSet> distinct;
        for (const auto & r : rs.rectangles()) {
            ElementSet s = side(r);
            if (std::find(distinct.begin(), distinct.end(), s) != distinct.end())
                continue;
            if (seen & s)
                return false;
            seen |= s;
            distinct.push_back(s);
        }
        return seen == rs.base().all();
    }
}

auto is_left_partitioned(const PRS & rs) -> bool
{
    return sides_partition(rs, [](const Rectangle & r) { return r.rows(); });
}

auto is_right_partitioned(const PRS & rs) -> bool
{
    return sides_partition(rs, [](const Rectangle & r) { return r.cols(); });
}

auto is_doubly_partitioned(const PRS & rs) -> bool
{
    return is_left_partitioned(rs) && is_right_partitioned(rs);
}

void validate_full_structure(const PRS & rs)
{
    require_full(rs);
    const int k = rs.base().size();
    for (int a = 0; a < k; ++a)
        if (rs.covered_from(a) != rs.base().all())
            throw InvalidStructure("pair starting at " + to_string(a + 1) + " is not covered");
    const auto & first = rs.rectangles().front();
    for (const auto & r : rs.rectangles()) {
        if (bits::count(r.rows()) * bits::count(r.cols()) != k)
            throw InvalidStructure("rectangle size differs from the base set size");
        if (bits::count(r.rows()) != bits::count(first.rows()))
            throw InvalidStructure("rectangles have different formats");
        for (const auto & q : rs.rectangles())
            if (bits::count(r.rows() & q.cols()) != 1)
                throw InvalidStructure("rows and cols of two rectangles do not meet once");
    }
    if (rs.middles() != rs.base().all())
        throw InvalidStructure("middles are not a bijection onto the base set");
}

auto product_of_points(int rows, int cols) -> PRS
{
    BaseSet base{rows, cols};
    vector<Rectangle> rectangles;
    // Element (a, b) of A x B is a * rows + b, with |A| = cols and |B| = rows.
    for (int a = 0; a < cols; ++a)
        for (int b = 0; b < rows; ++b) {
            ElementSet row_set = 0, col_set = 0;
            for (int y = 0; y < rows; ++y)
                row_set |= bits::single(a * rows + y);
            for (int x = 0; x < cols; ++x)
                col_set |= bits::single(x * rows + b);
            rectangles.emplace_back(row_set, col_set);
        }
    return PRS{base, std::move(rectangles)};
}

OperationTable::OperationTable(int order) : order_(order), entries_(static_cast<std::size_t>(order) * order, 0)
{
    if (order < 1)
        throw std::invalid_argument("operation table order must be positive");
}

OperationTable::OperationTable(int order, vector<int> entries) : order_(order), entries_(std::move(entries))
{
    if (order < 1 || entries_.size() != static_cast<std::size_t>(order) * order)
        throw std::invalid_argument("operation table needs order^2 entries");
    for (int v : entries_)
        if (v < 0 || v >= order)
            throw std::invalid_argument("operation table entry " + to_string(v + 1) + " out of range");
}

void OperationTable::set(int a, int b, int value)
{
    if (value < 0 || value >= order_)
        throw std::invalid_argument("operation table entry out of range");
    entries_[a * order_ + b] = value;
}

auto GraphPair::permuted(const Permutation & g) const -> GraphPair
{
    GraphPair result{order};
    for (int a = 0; a < order; ++a) {
        result.red[g(a)] = g.apply(red[a]);
        result.blue[g(a)] = g.apply(blue[a]);
    }
    return result;
}

}
