#ifndef RSENUM_CORE_HH
#define RSENUM_CORE_HH 1

// Value types shared by every module: element sets, rectangles,
// permutations, partial rectangular structures, operation tables and
// red/blue graph pairs.
//
// Elements of a base set of size k are stored 0-based (0..k-1). The
// 1-based numbering used in files and tables is applied by the io layer.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsenum {

/// Largest supported base set. The combined embedding graph has twice as
/// many nodes and must fit a 64-bit adjacency row.
inline constexpr int max_base_size = 32;

/// A subset of a base set as a bit mask.
using ElementSet = std::uint64_t;

namespace bits {
    [[nodiscard]] constexpr auto single(int x) noexcept -> ElementSet { return ElementSet{1} << x; }
    [[nodiscard]] constexpr auto contains(ElementSet s, int x) noexcept -> bool { return (s >> x) & 1U; }
    [[nodiscard]] constexpr auto count(ElementSet s) noexcept -> int { return std::popcount(s); }
    [[nodiscard]] constexpr auto lowest(ElementSet s) noexcept -> int { return std::countr_zero(s); }
    [[nodiscard]] constexpr auto full(int k) noexcept -> ElementSet
    {
        return k >= 64 ? ~ElementSet{0} : (ElementSet{1} << k) - 1;
    }

    /// Lexicographic order of the ascending element sequences, valid for
    /// sets of equal size: the smaller set owns the least element of the
    /// symmetric difference.
    [[nodiscard]] constexpr auto lex_compare(ElementSet a, ElementSet b) noexcept -> std::strong_ordering
    {
        if (a == b)
            return std::strong_ordering::equal;
        return contains(a, lowest(a ^ b)) ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    [[nodiscard]] auto elements(ElementSet s) -> std::vector<int>;
    [[nodiscard]] auto from_elements(const std::vector<int> & xs) -> ElementSet;

    template <typename F>
    constexpr void for_each(ElementSet s, F && f)
    {
        while (s) {
            f(lowest(s));
            s &= s - 1;
        }
    }
}

/// Thrown when a value violates one of the defining axioms.
class InvalidStructure : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Format (n, m) and the implied base set {0, ..., n*m - 1}.
class BaseSet
{
public:
    BaseSet(int rows, int cols);

    [[nodiscard]] auto rows() const noexcept -> int { return rows_; }
    [[nodiscard]] auto cols() const noexcept -> int { return cols_; }
    [[nodiscard]] auto size() const noexcept -> int { return rows_ * cols_; }
    [[nodiscard]] auto all() const noexcept -> ElementSet { return bits::full(size()); }

    auto operator==(const BaseSet &) const -> bool = default;

private:
    int rows_;
    int cols_;
};

class Permutation;

/// An ordered pair (rows, cols) of element sets meeting in exactly one
/// element, the middle.
class Rectangle
{
public:
    /// Checks only the single-middle condition; sizes are checked against
    /// a base set by validate().
    Rectangle(ElementSet rows, ElementSet cols);

    [[nodiscard]] auto rows() const noexcept -> ElementSet { return rows_; }
    [[nodiscard]] auto cols() const noexcept -> ElementSet { return cols_; }
    [[nodiscard]] auto middle() const noexcept -> int { return bits::lowest(rows_ & cols_); }

    void validate(const BaseSet & base) const;
    [[nodiscard]] auto permuted(const Permutation & g) const -> Rectangle;

    auto operator==(const Rectangle &) const -> bool = default;
    auto operator<=>(const Rectangle & other) const -> std::strong_ordering
    {
        if (auto c = bits::lex_compare(rows_, other.rows_); c != 0)
            return c;
        return bits::lex_compare(cols_, other.cols_);
    }

private:
    ElementSet rows_;
    ElementSet cols_;
};

[[nodiscard]] auto rectangle_middle(const Rectangle & r) -> int;

/// A bijection of {0, ..., k-1}; images()[x] is the image of x.
class Permutation
{
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    [[nodiscard]] static auto identity(int k) -> Permutation;

    [[nodiscard]] auto size() const noexcept -> int { return static_cast<int>(images_.size()); }
    [[nodiscard]] auto operator()(int x) const -> int { return images_[x]; }
    [[nodiscard]] auto images() const noexcept -> const std::vector<int> & { return images_; }
    [[nodiscard]] auto apply(ElementSet s) const -> ElementSet;

    /// x -> next(this(x)).
    [[nodiscard]] auto then(const Permutation & next) const -> Permutation;
    [[nodiscard]] auto inverse() const -> Permutation;
    [[nodiscard]] auto is_identity() const noexcept -> bool;
    /// Order in the symmetric group (lcm of cycle lengths).
    [[nodiscard]] auto order() const -> long;
    /// Disjoint cycles of length > 1, each starting at its least element.
    [[nodiscard]] auto cycles() const -> std::vector<std::vector<int>>;

    auto operator==(const Permutation &) const -> bool = default;
    auto operator<=>(const Permutation &) const = default;

private:
    std::vector<int> images_;
};

/// A set of rectangles over a common base set, pairwise meeting in exactly
/// one element (rows of one against cols of the other) and covering every
/// ordered pair at most once. Rectangles are kept sorted.
class PartialRectangularStructure
{
public:
    explicit PartialRectangularStructure(BaseSet base);
    /// Validates every axiom; throws InvalidStructure naming the violation.
    PartialRectangularStructure(BaseSet base, std::vector<Rectangle> rectangles);

    [[nodiscard]] auto base() const noexcept -> const BaseSet & { return base_; }
    [[nodiscard]] auto rectangles() const noexcept -> const std::vector<Rectangle> & { return rectangles_; }
    [[nodiscard]] auto size() const noexcept -> int { return static_cast<int>(rectangles_.size()); }
    [[nodiscard]] auto empty() const noexcept -> bool { return rectangles_.empty(); }
    [[nodiscard]] auto is_full() const noexcept -> bool { return size() == base_.size(); }
    [[nodiscard]] auto contains(const Rectangle & r) const -> bool;
    [[nodiscard]] auto index_of(const Rectangle & r) const -> std::optional<int>;

    /// Elements that are already the middle of some rectangle.
    [[nodiscard]] auto middles() const noexcept -> ElementSet { return middles_; }
    /// covered_from(a) is the set of b with (a, b) inside some rectangle.
    [[nodiscard]] auto covered_from(int a) const -> ElementSet { return covered_[a]; }

    /// Whether adding r keeps every axiom. r must be well formed for the base.
    [[nodiscard]] auto is_valid_extension(const Rectangle & r) const -> bool;
    /// Returns the structure with r added; throws if r is not a valid extension.
    [[nodiscard]] auto extended(const Rectangle & r) const -> PartialRectangularStructure;
    [[nodiscard]] auto permuted(const Permutation & g) const -> PartialRectangularStructure;

    auto operator==(const PartialRectangularStructure & other) const -> bool
    {
        return base_ == other.base_ && rectangles_ == other.rectangles_;
    }

private:
    void add_unchecked(const Rectangle & r);

    BaseSet base_;
    std::vector<Rectangle> rectangles_;
    std::vector<ElementSet> covered_;
    ElementSet middles_ = 0;
};

using PRS = PartialRectangularStructure;

[[nodiscard]] auto prs_is_valid_extension(const PRS & x, const Rectangle & r) -> bool;

/// The rows (left) or cols (right) of a full structure partition the base set.
[[nodiscard]] auto is_left_partitioned(const PRS & rs) -> bool;
[[nodiscard]] auto is_right_partitioned(const PRS & rs) -> bool;
[[nodiscard]] auto is_doubly_partitioned(const PRS & rs) -> bool;

/// Checks that a full structure covers every ordered pair exactly once,
/// that every rectangle has |rows|*|cols| = |S| with one common format, and
/// that middles form a bijection onto the base set. Throws InvalidStructure.
void validate_full_structure(const PRS & rs);

/// The product-of-points structure of format rows x cols on A x B with
/// |A| = cols, |B| = rows: element (a, b) is a*rows + b and
/// R(a,b) = ({a} x B, A x {b}).
[[nodiscard]] auto product_of_points(int rows, int cols) -> PRS;

/// A finite binary operation on {0, ..., k-1}.
class OperationTable
{
public:
    OperationTable() = default;
    explicit OperationTable(int order);
    OperationTable(int order, std::vector<int> entries);

    [[nodiscard]] auto order() const noexcept -> int { return order_; }
    [[nodiscard]] auto operator()(int a, int b) const -> int { return entries_[a * order_ + b]; }
    void set(int a, int b, int value);
    [[nodiscard]] auto entries() const noexcept -> const std::vector<int> & { return entries_; }

    auto operator==(const OperationTable &) const -> bool = default;

private:
    int order_ = 0;
    std::vector<int> entries_;
};

/// Two directed graphs (red and blue) on nodes {0, ..., k-1}; loops allowed.
struct GraphPair
{
    int order = 0;
    std::vector<ElementSet> red;  ///< red[a] = out-neighbours of a
    std::vector<ElementSet> blue;

    explicit GraphPair(int k = 0) : order(k), red(k, 0), blue(k, 0) {}

    void add_red(int a, int b) { red[a] |= bits::single(b); }
    void add_blue(int a, int b) { blue[a] |= bits::single(b); }
    [[nodiscard]] auto permuted(const Permutation & g) const -> GraphPair;

    auto operator==(const GraphPair &) const -> bool = default;
};

}

#endif
