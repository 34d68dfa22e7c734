#ifndef RSENUM_IO_HH
#define RSENUM_IO_HH 1

// Text formats. Everything on disk is 1-based; everything in memory 0-based.
//
//  * structures: JSONL, {"n":..,"m":..,"rectangles":[{"rows":[..],"cols":[..]},..]}
//  * tables: k lines of k integers, optional header row and column
//  * 0-1 matrices: k lines of k zeros and ones
//  * liftings: disjoint cycles, "(1,9)(2,7)(4,8)", "()" for the identity
//  * graph pairs: DOT digraphs with red and blue edges

#include <rsenum/core.hh>
#include <rsenum/filter.hh>

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rsenum {

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string & message, int line, int column = 0);

    [[nodiscard]] auto line() const noexcept -> int { return line_; }
    [[nodiscard]] auto column() const noexcept -> int { return column_; }

private:
    int line_, column_;
};

[[nodiscard]] auto rs_to_json(const PRS & rs) -> nlohmann::json;
/// Throws InvalidStructure on schema or axiom violations.
[[nodiscard]] auto rs_from_json(const nlohmann::json & j) -> PRS;

void write_rs_jsonl(std::ostream & out, const std::vector<PRS> & structures);
[[nodiscard]] auto read_rs_jsonl(std::istream & in) -> std::vector<PRS>;

[[nodiscard]] auto format_cycles(const Permutation & p) -> std::string;
/// Throws ParseError (line 0) on malformed input or repeated points.
[[nodiscard]] auto parse_cycles(const std::string & text, int size) -> Permutation;

[[nodiscard]] auto format_table(const OperationTable & op) -> std::string;

/// A parsed grid: either an operation table or the rows of a 0-1 matrix.
struct ParsedGrid
{
    std::variant<OperationTable, std::vector<ElementSet>> content;

    [[nodiscard]] auto is_matrix() const noexcept -> bool { return content.index() == 1; }
};

/// Blank lines and lines starting with '#' are ignored; tokens are split on
/// whitespace, '|', '&' and ':'. A grid containing a 0 is a matrix.
[[nodiscard]] auto parse_grid(std::istream & in) -> ParsedGrid;
[[nodiscard]] auto parse_table(std::istream & in) -> OperationTable;

/// `structure`, when given, is embedded in the record.
[[nodiscard]] auto witness_to_json(const CentralGroupoidWitness & w, const PRS * structure = nullptr) -> nlohmann::json;
[[nodiscard]] auto witness_from_json(const nlohmann::json & j) -> CentralGroupoidWitness;

[[nodiscard]] auto to_dot(const GraphPair & gp, const std::string & name) -> std::string;

struct DotGraph
{
    std::string name;
    std::vector<int> nodes;                        ///< in file order, 1-based
    std::set<std::pair<int, int>> red, blue;       ///< 1-based
};

/// Parses the DOT subset written by to_dot, one or more digraphs.
[[nodiscard]] auto parse_dot(const std::string & text) -> std::vector<DotGraph>;
[[nodiscard]] auto dot_to_graph_pair(const DotGraph & g) -> GraphPair;

}

#endif
