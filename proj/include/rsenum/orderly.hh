#ifndef RSENUM_ORDERLY_HH
#define RSENUM_ORDERLY_HH 1

// Isomorph-free generation of rectangular structures by an orderly
// algorithm: a partial structure X is extended by one representative of
// each orbit of its stabiliser G_X on valid candidate rectangles, and the
// extension X+R is kept only when R lies in the distinguished orbit
// theta(X+R).
//
// theta(Y) is the G_Y-orbit of the rectangle minimising
//     (v1, v2, v3, canonical label of its embedding node)
// where the v's are relabelling-invariant counts (see CombinatorialValue).
// Most decisions are settled by the counts alone; canonical labelling is
// only needed when several rectangles tie and they are not all in one
// G_Y-orbit.

#include <rsenum/canon.hh>
#include <rsenum/core.hh>

#include <compare>
#include <optional>
#include <vector>

namespace rsenum {

/// Relabelling-invariant score of a rectangle R within a structure X.
struct CombinatorialValue
{
    int rows_through_middle = 0;          ///< v1: #{Q : m(R) in rows(Q)}
    int cols_through_middle = 0;          ///< v2: #{Q : m(R) in cols(Q)}
    std::vector<int> row_intersections;   ///< v3, first: sorted |rows(R) & rows(Q)|
    std::vector<int> col_intersections;   ///< v3, second: sorted |cols(R) & cols(Q)|

    auto operator<=>(const CombinatorialValue &) const = default;
};

/// Throws std::invalid_argument if r is not in x.
[[nodiscard]] auto combinatorial_value(const PRS & x, const Rectangle & r) -> CombinatorialValue;

/// Every rectangle r with prs_is_valid_extension(x, r), in ascending order.
/// Built middle by middle from the constraints, never from the full set of
/// rectangles.
[[nodiscard]] auto candidate_extensions(const PRS & x) -> std::vector<Rectangle>;

/// The least rectangle of every orbit of <generators> on `candidates`,
/// which must be sorted and closed under the group.
[[nodiscard]] auto orbit_representatives(const std::vector<Rectangle> & candidates,
    const std::vector<Permutation> & generators) -> std::vector<Rectangle>;

struct EnumerationStats
{
    long tree_nodes = 0;              ///< partial structures expanded
    long candidates = 0;              ///< valid candidates generated
    long theta_tests = 0;
    long rejected_by_value = 0;
    long accepted_by_value = 0;       ///< uniquely minimal value
    long accepted_by_single_orbit = 0;
    long canonical_labelings = 0;
    long automorphism_searches = 0;
    long accepted = 0;

    auto operator+=(const EnumerationStats & other) -> EnumerationStats &;
    auto operator==(const EnumerationStats &) const -> bool = default;
};

struct ThetaDecision
{
    bool accepted = false;
    /// Stabiliser generators of the extended structure, when computed.
    std::optional<std::vector<Permutation>> stabiliser;
};

/// Decides whether r_new (a member of x_new) lies in theta(x_new).
[[nodiscard]] auto theta_decide(const PRS & x_new, const Rectangle & r_new, EnumerationStats * stats = nullptr)
    -> ThetaDecision;

[[nodiscard]] auto theta_accept(const PRS & x_new, const Rectangle & r_new) -> bool;

struct EnumerationOptions
{
    int jobs = 1;
};

struct EnumerationReport
{
    int rows = 0;
    int cols = 0;
    /// One structure per isomorphism class, ordered by the canonical form
    /// of the embedding.
    std::vector<PRS> structures;
    EnumerationStats stats;
    double seconds = 0.0;
};

[[nodiscard]] auto enumerate(int rows, int cols, const EnumerationOptions & options = {}) -> EnumerationReport;

/// Canonical form of the embedding graph; equal iff the structures are
/// isomorphic.
[[nodiscard]] auto structure_certificate(const PRS & x) -> std::vector<std::pair<int, int>>;

}

#endif
