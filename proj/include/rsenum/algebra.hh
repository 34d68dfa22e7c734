#ifndef RSENUM_ALGEBRA_HH
#define RSENUM_ALGEBRA_HH 1

// Semicentral bigroupoids, central groupoids and the conversions between
// them, rectangular structures and red/blue graph pairs.
//
// A semicentral bigroupoid (S, *, o) satisfies
//     (a * b) o (b * c) = b   and   (a o b) * (b o c) = b.
// A central groupoid is one with * = o. Tables are indexed 0..k-1.

#include <rsenum/canon.hh>
#include <rsenum/core.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsenum {

/// A result contradicting a theorem the pipeline relies on.
class TheoryViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

struct SemicentralBigroupoid
{
    OperationTable bullet;
    OperationTable circ;

    [[nodiscard]] auto order() const noexcept -> int { return bullet.order(); }
    auto operator==(const SemicentralBigroupoid &) const -> bool = default;
};

using SCB = SemicentralBigroupoid;

/// A triple (a, b, c) at which an identity fails, 0-based.
struct AxiomViolation
{
    int a = 0, b = 0, c = 0;
    std::string identity;

    [[nodiscard]] auto describe() const -> std::string;
};

[[nodiscard]] auto find_scb_violation(const OperationTable & bullet, const OperationTable & circ)
    -> std::optional<AxiomViolation>;
/// Throws std::invalid_argument if the orders differ.
[[nodiscard]] auto check_scb(const OperationTable & bullet, const OperationTable & circ) -> bool;

[[nodiscard]] auto find_central_violation(const OperationTable & op) -> std::optional<AxiomViolation>;
/// False immediately for non-square orders.
[[nodiscard]] auto check_central_groupoid(const OperationTable & op) -> bool;

[[nodiscard]] auto integer_sqrt(int k) -> std::optional<int>;
[[nodiscard]] auto idempotent_count(const OperationTable & op) -> int;
[[nodiscard]] auto is_idempotent(const OperationTable & op) -> bool;
[[nodiscard]] auto is_associative(const OperationTable & op) -> bool;
/// a * b = b * a implies a = b.
[[nodiscard]] auto is_anticommutative(const OperationTable & op) -> bool;
/// a * b = c * d = x implies a * d = c * b = x.
[[nodiscard]] auto has_swap_property(const OperationTable & op) -> bool;
/// Every value fills a combinatorial rectangle of rows x cols cells, all
/// of one format; returns that format.
[[nodiscard]] auto operation_format(const OperationTable & op) -> std::optional<std::pair<int, int>>;

/// x -> x * x. Throws InvalidStructure if it is not a bijection.
[[nodiscard]] auto square_map(const SCB & s) -> Permutation;

/// a *' b = phi^-1(a * b), a o' b = phi(a) o phi(b). Throws TheoryViolation
/// if the result fails the axioms.
[[nodiscard]] auto lift(const SCB & s, const Permutation & phi) -> SCB;

/// The lifting by the square map, which is idempotent, and the square map.
[[nodiscard]] auto idempotent_lifting(const SCB & s) -> std::pair<SCB, Permutation>;

/// {(S*x, x*S) : x in S} for an idempotent bigroupoid.
[[nodiscard]] auto scb_to_rs(const SCB & s) -> PRS;

/// s * t is the element of cols(d^-1(s)) & rows(d^-1(t)); s o t is the
/// middle of the rectangle covering (s, t).
[[nodiscard]] auto rs_to_operations(const PRS & rs) -> SCB;

/// red a -> a * c, blue a -> a o c.
[[nodiscard]] auto scb_to_graph_pair(const SCB & s) -> GraphPair;

/// Inverse construction from unique red-blue and blue-red 2-paths. Throws
/// InvalidStructure if some path is missing or not unique.
[[nodiscard]] auto graph_pair_to_scb(const GraphPair & gp) -> SCB;

/// Both red-blue and blue-red path counts are all ones (AB = BA = J).
[[nodiscard]] auto verify_product_J(const GraphPair & gp) -> bool;

/// A^2 = J for the adjacency rows of one digraph.
[[nodiscard]] auto square_is_J(const std::vector<ElementSet> & adjacency) -> bool;

/// Edges a -> a * c of a single operation, as adjacency rows.
[[nodiscard]] auto operation_graph(const OperationTable & op) -> std::vector<ElementSet>;
[[nodiscard]] auto operation_digraph(const OperationTable & op) -> Digraph;

/// The central groupoid read off a UPP2 digraph: a * b is the midpoint of
/// the unique 2-path. Throws InvalidStructure if A^2 != J.
[[nodiscard]] auto midpoint_operation(const std::vector<ElementSet> & adjacency) -> OperationTable;

/// (a, b) * (c, d) = (b, c) on A x A, |A| = n, with (a, b) stored as a*n + b.
[[nodiscard]] auto natural_central_groupoid(int n) -> OperationTable;

/// (a1, b1) * (a2, b2) = (a1, b2) and (a1, b1) o (a2, b2) = (a2, b1) on A x B.
[[nodiscard]] auto rectangular_bigroupoid(int rows, int cols) -> SCB;

}

#endif
