#ifndef RSENUM_FILTER_HH
#define RSENUM_FILTER_HH 1

// Central groupoids from rectangular structures.
//
// A central groupoid of order n^2 is a lifting of an n x n rectangular
// structure's bigroupoid by an order-2 map phi carrying the blue graph onto
// the red one. For each structure we list those maps, reduce them to one per
// conjugacy orbit under the structure's automorphism group, and read off
//     a . b = phi(a o b) = phi(a) * phi(b).

#include <rsenum/algebra.hh>
#include <rsenum/core.hh>
#include <rsenum/orderly.hh>

#include <map>
#include <string>
#include <vector>

namespace rsenum {

enum class Provenance
{
    natural,   ///< from the doubly partitioned structure
    lifted,
};

[[nodiscard]] auto to_string(Provenance p) -> std::string;

struct CentralGroupoidWitness
{
    int source_rs = 0;          ///< index into the enumerated structures
    Permutation lifting;
    OperationTable table;
    Provenance provenance = Provenance::lifted;
};

/// All phi with blue^phi = red, that is phi(a o b) = phi(a) * phi(b).
[[nodiscard]] auto graph_pair_isomorphisms(const PRS & rs) -> std::vector<Permutation>;

[[nodiscard]] auto order2_isomorphisms(const std::vector<Permutation> & isomorphisms) -> std::vector<Permutation>;

/// The least member of every orbit of <generators> acting on `perms` by
/// conjugation. `perms` must be closed under that action.
[[nodiscard]] auto conjugacy_orbit_representatives(const std::vector<Permutation> & perms,
    const std::vector<Permutation> & generators) -> std::vector<Permutation>;
[[nodiscard]] auto conjugacy_orbit_representatives(const std::vector<Permutation> & perms, const PRS & rs)
    -> std::vector<Permutation>;

/// The table a . b = phi(a o b), cross-checked against phi(a) * phi(b).
/// Throws TheoryViolation on a mismatch or if the result is not central.
[[nodiscard]] auto lifted_central_groupoid(const SCB & operations, const Permutation & phi) -> OperationTable;

/// What happened to one structure on its way through the filter.
struct FilterTrace
{
    bool left_partitioned = false;
    bool right_partitioned = false;
    int isomorphisms = 0;
    int order2 = 0;
    int representatives = 0;
};

[[nodiscard]] auto central_groupoids_from_rs(const PRS & rs, int index = 0, FilterTrace * trace = nullptr)
    -> std::vector<CentralGroupoidWitness>;

/// Stage counts over a whole enumeration. The "non_partitioned" stages are
/// the ones reported for order 9 in the literature; singly partitioned
/// structures are also run through the pipeline and counted separately.
struct FilterFunnel
{
    int structures = 0;
    int doubly_partitioned = 0;
    int singly_partitioned = 0;
    int non_partitioned = 0;
    int non_partitioned_with_isomorphic_pair = 0;
    int non_partitioned_without_order2 = 0;
    /// number of order-2 isomorphisms -> number of non-partitioned structures
    std::map<int, int> order2_histogram;
    int unnatural_representatives = 0;
    int singly_partitioned_with_isomorphic_pair = 0;
    int singly_partitioned_witnesses = 0;
    int natural_witnesses = 0;
    int unnatural_witnesses = 0;
    int witnesses = 0;
};

struct CentralGroupoidReport
{
    int n = 0;
    FilterFunnel funnel;
    std::vector<PRS> structures;
    std::vector<CentralGroupoidWitness> witnesses;
    EnumerationStats enumeration;
    double seconds = 0.0;
};

/// Runs the filter over already enumerated n x n structures and certifies
/// the witnesses pairwise non-isomorphic. Throws TheoryViolation when a
/// check the theory guarantees fails.
[[nodiscard]] auto filter_central_groupoids(int n, std::vector<PRS> structures, int jobs = 1) -> CentralGroupoidReport;

[[nodiscard]] auto central_groupoid_report(int n, int jobs = 1) -> CentralGroupoidReport;
[[nodiscard]] auto enumerate_central_groupoids(int n, int jobs = 1) -> std::vector<CentralGroupoidWitness>;

/// Canonical form of the single digraph a -> a . c; equal iff isomorphic.
[[nodiscard]] auto central_groupoid_certificate(const OperationTable & op) -> std::vector<std::pair<int, int>>;

}

#endif
