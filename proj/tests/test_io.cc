#include "oracles.hh"

#include <rsenum/cli.hh>
#include <rsenum/embed.hh>
#include <rsenum/io.hh>
#include <rsenum/orderly.hh>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rsenum;
namespace fs = std::filesystem;

namespace {
    auto data(const std::string & name) -> std::string
    {
        return std::string{RSENUM_TEST_DATA} + "/" + name;
    }

    auto load_table(const std::string & name) -> OperationTable
    {
        std::ifstream in{data(name)};
        REQUIRE(in);
        return parse_table(in);
    }

    auto grid(const std::string & text) -> ParsedGrid
    {
        std::istringstream in{text};
        return parse_grid(in);
    }

    auto scratch_dir() -> fs::path
    {
        auto dir = fs::temp_directory_path() / ("rsenum_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        return dir;
    }

    struct Run
    {
        int code;
        std::string out, err;
    };

    template <typename F>
    auto run(F command, const RunConfig & config) -> Run
    {
        std::ostringstream out, err;
        const int code = command(config, out, err);
        return {code, out.str(), err.str()};
    }
}

TEST_CASE("structure JSONL round trip")
{
    auto structures = enumerate(3, 3).structures;
    std::stringstream buffer;
    write_rs_jsonl(buffer, structures);
    CHECK(read_rs_jsonl(buffer) == structures);

    auto j = rs_to_json(product_of_points(1, 2));
    CHECK(j.dump() == R"({"m":2,"n":1,"rectangles":[{"cols":[1,2],"rows":[1]},{"cols":[1,2],"rows":[2]}]})");
}

TEST_CASE("malformed structure records")
{
    CHECK_THROWS_AS((void) rs_from_json(nlohmann::json::parse(R"({"n":1,"rectangles":[]})")), InvalidStructure);
    CHECK_THROWS_AS((void) rs_from_json(nlohmann::json::parse(R"({"n":1,"m":1,"rectangles":[{"rows":[2],"cols":[1]}]})")), InvalidStructure);
    CHECK_THROWS_AS((void) rs_from_json(nlohmann::json::parse(R"({"n":1,"m":2,"rectangles":[{"rows":[1],"cols":[1,2]},{"rows":[1],"cols":[1,2]}]})")),
        InvalidStructure);

    std::istringstream in{"{\"n\":1,\"m\":1,\"rectangles\":[{\"rows\":[1],\"cols\":[1]}]}\n\nnot json\n"};
    try {
        (void) read_rs_jsonl(in);
        FAIL("expected a parse error");
    }
    catch (const ParseError & e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("cycle notation")
{
    CHECK(format_cycles(Permutation::identity(4)) == "()");
    CHECK(format_cycles(Permutation{{8, 6, 2, 7, 4, 5, 1, 3, 0}}) == "(1,9)(2,7)(4,8)");
    CHECK(parse_cycles("(1,9)(2,7)(4,8)", 9) == Permutation{{8, 6, 2, 7, 4, 5, 1, 3, 0}});
    CHECK(parse_cycles("()", 3).is_identity());
    CHECK(parse_cycles(" ( 1 , 2 , 3 ) ", 3) == Permutation{{1, 2, 0}});
    CHECK_THROWS_AS((void) parse_cycles("(1,2)(2,3)", 3), ParseError);
    CHECK_THROWS_AS((void) parse_cycles("(1,4)", 3), ParseError);
    CHECK_THROWS_AS((void) parse_cycles("1,2", 3), ParseError);
    CHECK_THROWS_AS((void) parse_cycles("(1,2", 3), ParseError);

    std::mt19937 rng{89};
    for (int trial = 0; trial < 100; ++trial) {
        auto p = oracle::random_permutation(rng, 1 + static_cast<int>(rng() % 12));
        CHECK(parse_cycles(format_cycles(p), p.size()) == p);
    }
}

TEST_CASE("table grids")
{
    auto plain = load_table("number105.table");
    CHECK(plain.order() == 9);
    CHECK(plain(0, 0) == 8);
    CHECK(load_table("number105_with_header.table") == plain);

    std::istringstream again{format_table(plain)};
    CHECK(parse_table(again) == plain);

    // Column numbers as the only header.
    CHECK(std::get<OperationTable>(grid("1 2\n1 2\n1 2\n").content) == OperationTable{2, {0, 1, 0, 1}});
    CHECK(std::get<OperationTable>(grid("# comment\n\n2 1\n1 2\n").content) == OperationTable{2, {1, 0, 0, 1}});

    auto matrix = grid("1 1 0 0\n0 0 1 1\n1 1 0 0\n0 0 1 1\n");
    REQUIRE(matrix.is_matrix());
    CHECK(std::get<std::vector<ElementSet>>(matrix.content) == std::vector<ElementSet>{3, 12, 3, 12});
}

TEST_CASE("grid parse errors carry a position")
{
    auto expect_error = [](const std::string & text, int line, int column) {
        try {
            (void) grid(text);
            FAIL("expected a parse error");
        }
        catch (const ParseError & e) {
            CHECK(e.line() == line);
            CHECK(e.column() == column);
        }
    };
    expect_error("1 2 x\n2 1 1\n1 1 1\n", 1, 5);
    expect_error("1 2\n2 3\n", 2, 3);
    expect_error("1 0\n2 1\n", 2, 1);
    expect_error("1 2\n2\n", 2, 0);
    expect_error("", 1, 0);
}

TEST_CASE("witness records")
{
    CentralGroupoidWitness w{4, parse_cycles("(1,9)(2,7)(4,8)", 9), load_table("number10.table"), Provenance::lifted};
    auto back = witness_from_json(nlohmann::json::parse(witness_to_json(w).dump()));
    CHECK(back.source_rs == 4);
    CHECK(back.lifting == w.lifting);
    CHECK(back.table == w.table);
    CHECK(back.provenance == Provenance::lifted);

    auto with_source = witness_to_json(w);
    CHECK_FALSE(with_source.contains("structure"));
    auto rs = product_of_points(3, 3);
    CHECK(rs_from_json(witness_to_json(w, &rs).at("structure")) == rs);
}

TEST_CASE("DOT export")
{
    auto one = to_dot(prs_to_graph_pair(product_of_points(1, 1)), "rs_1");
    CHECK(one == "digraph rs_1 {\n  1;\n  1 -> 1 [color=\"red:blue\"];\n}\n");

    auto rows = operation_graph(load_table("natural.table"));
    GraphPair cg{9};
    cg.red = cg.blue = rows;
    auto parsed = parse_dot(to_dot(cg, "cg_1"));
    REQUIRE(parsed.size() == 1);
    CHECK(parsed.front().nodes.size() == 9);
    CHECK(parsed.front().red == parsed.front().blue);
    CHECK(dot_to_graph_pair(parsed.front()) == cg);

    std::string all;
    auto structures = enumerate(3, 3).structures;
    for (std::size_t i = 0; i < structures.size(); ++i)
        all += to_dot(prs_to_graph_pair(structures[i]), "rs_" + std::to_string(i + 1));
    auto graphs = parse_dot(all);
    REQUIRE(graphs.size() == structures.size());
    for (std::size_t i = 0; i < structures.size(); ++i) {
        CHECK(graphs[i].name == "rs_" + std::to_string(i + 1));
        CHECK(dot_to_graph_pair(graphs[i]) == prs_to_graph_pair(structures[i]));
    }

    CHECK_THROWS_AS((void) parse_dot("graph x { }"), ParseError);
    CHECK_THROWS_AS((void) parse_dot("digraph x { 1 -> 2 [color=\"green\"]; }"), ParseError);
    CHECK_THROWS_AS((void) parse_dot("digraph x { 1 -> 2 "), ParseError);
}

TEST_CASE("verify command")
{
    for (auto name : {"natural.table", "number10.table", "number36.table", "number105.table", "number118_a.table",
             "number118_b.table", "number105_with_header.table", "natural4.matrix"}) {
        CAPTURE(name);
        RunConfig config;
        config.input = data(name);
        auto r = run(cmd_verify, config);
        CHECK(r.code == exit_ok);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }

    RunConfig bad;
    bad.input = data("constant4.table");
    auto r = run(cmd_verify, bad);
    CHECK(r.code == exit_verification_failed);
    CHECK(r.out.find("FAIL central groupoid axiom (a*b)*(b*c) = b: (a*b)*(b*c) = b fails at (a,b,c) = (1,2,1)") != std::string::npos);

    bad.input = data("malformed.table");
    r = run(cmd_verify, bad);
    CHECK(r.code == exit_usage);
    CHECK(r.err.find("line 1, column 5") != std::string::npos);

    bad.input = data("does-not-exist.table");
    CHECK(run(cmd_verify, bad).code == exit_usage);
}

TEST_CASE("enumerate command")
{
    auto dir = scratch_dir();
    RunConfig config;
    config.n = 2;
    config.m = 2;
    config.output = (dir / "rs22.jsonl").string();
    auto r = run(cmd_enumerate, config);
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("3 rectangular structures") != std::string::npos);
    std::ifstream in{*config.output};
    CHECK(read_rs_jsonl(in) == enumerate(2, 2).structures);

    config.n = 1;
    config.m = 3;
    config.output.reset();
    CHECK(run(cmd_enumerate, config).out.find("1 rectangular structures") != std::string::npos);

    config.output = (dir / "missing" / "sub" / "x.jsonl").string();
    CHECK(run(cmd_enumerate, config).code == exit_usage);
}

TEST_CASE("filter-cg and export-dot commands")
{
    auto dir = scratch_dir();
    RunConfig config;
    config.n = 2;
    config.output = (dir / "cg2.jsonl").string();
    auto r = run(cmd_filter_cg, config);
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("1 central groupoids") != std::string::npos);
    CHECK(r.out.find("natural") != std::string::npos);

    config.n = 1;
    CHECK(run(cmd_filter_cg, config).out.find("1 central groupoids") != std::string::npos);

    config.n = 3;
    config.output = (dir / "cg3.jsonl").string();
    r = run(cmd_filter_cg, config);
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("6 central groupoids") != std::string::npos);

    RunConfig dot;
    dot.input = *config.output;
    dot.output = (dir / "dot").string();
    CHECK(run(cmd_export_dot, dot).code == exit_ok);
    int files = 0;
    for (const auto & entry : fs::directory_iterator{*dot.output}) {
        std::ifstream in{entry.path()};
        std::stringstream text;
        text << in.rdbuf();
        auto graphs = parse_dot(text.str());
        REQUIRE(graphs.size() == 1);
        CHECK(graphs.front().red == graphs.front().blue);
        CHECK(square_is_J(dot_to_graph_pair(graphs.front()).red));
        ++files;
    }
    CHECK(files == 6);

    config.format = "table";
    config.output = (dir / "cg3.table").string();
    CHECK(run(cmd_filter_cg, config).code == exit_ok);
    config.format = "xml";
    CHECK(run(cmd_filter_cg, config).code == exit_usage);

    dot.input = data("natural.table");
    dot.output.reset();
    r = run(cmd_export_dot, dot);
    CHECK(r.code == exit_ok);
    CHECK(parse_dot(r.out).size() == 1);
    fs::remove_all(dir);
}
