#include <rsenum/algebra.hh>
#include <rsenum/cli.hh>
#include <rsenum/embed.hh>
#include <rsenum/filter.hh>
#include <rsenum/orderly.hh>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using std::string;
using std::vector;

namespace rsenum {

namespace {
    template <typename F>
    auto guarded(std::ostream & err, F && body) -> int
    {
        try {
            return body();
        }
        catch (const TheoryViolation & e) {
            err << "internal theory violation: " << e.what() << '\n';
            return exit_theory_violation;
        }
        catch (const ParseError & e) {
            err << "parse error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
    }

    auto open_output(const string & path) -> std::ofstream
    {
        std::ofstream file{path};
        if (! file)
            throw std::runtime_error("cannot open " + path + " for writing");
        return file;
    }

    void finish_output(std::ofstream & file, const string & path)
    {
        file.flush();
        if (! file)
            throw std::runtime_error("write to " + path + " failed");
    }

    auto read_file(const string & path) -> string
    {
        std::ifstream file{path};
        if (! file)
            throw std::runtime_error("cannot open " + path);
        std::ostringstream s;
        s << file.rdbuf();
        return s.str();
    }

    void row(std::ostream & out, const string & label, long value)
    {
        out << std::left << std::setw(40) << label << std::right << std::setw(8) << value << '\n';
    }
}

auto VerifyReport::passed() const -> bool
{
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck & c) { return c.passed; });
}

auto verify_grid(const ParsedGrid & grid) -> VerifyReport
{
    VerifyReport report;
    report.matrix = grid.is_matrix();
    vector<ElementSet> adjacency;
    std::optional<OperationTable> table;
    if (report.matrix)
        adjacency = std::get<vector<ElementSet>>(grid.content);
    else {
        table = std::get<OperationTable>(grid.content);
        adjacency = operation_graph(*table);
    }
    report.order = static_cast<int>(adjacency.size());
    const int k = report.order;

    const bool square_j = square_is_J(adjacency);
    if (report.matrix && square_j)
        table = midpoint_operation(adjacency);

    VerifyCheck axiom{"central groupoid axiom (a*b)*(b*c) = b", false, {}};
    if (! table)
        axiom.detail = "no operation: the matrix has no unique 2-paths";
    else if (auto v = find_central_violation(*table))
        axiom.detail = v->describe();
    else
        axiom.passed = true;
    report.checks.push_back(axiom);

    VerifyCheck j{"A^2 = J", square_j, {}};
    if (! square_j) {
        // Name the first offending pair.
        for (int a = 0; a < k && j.detail.empty(); ++a)
            for (int b = 0; b < k; ++b) {
                int paths = 0;
                bits::for_each(adjacency[a], [&](int x) { paths += bits::contains(adjacency[x], b); });
                if (paths != 1) {
                    j.detail = std::to_string(paths) + " paths of length 2 from " + std::to_string(a + 1) + " to " + std::to_string(b + 1);
                    break;
                }
            }
    }
    report.checks.push_back(j);

    VerifyCheck upp{"UPP2: unique 2-path midpoints reproduce the operation", false, {}};
    if (! square_j)
        upp.detail = "paths are not unique";
    else if (midpoint_operation(adjacency) != *table)
        upp.detail = "midpoint of the 2-path from a to b differs from a*b";
    else
        upp.passed = true;
    report.checks.push_back(upp);

    VerifyCheck idem{"idempotent count = sqrt(order)", false, {}};
    int loops = 0;
    for (int a = 0; a < k; ++a)
        loops += bits::contains(adjacency[a], a);
    const int idempotents = table ? idempotent_count(*table) : loops;
    auto root = integer_sqrt(k);
    idem.passed = root && *root == idempotents;
    if (! idem.passed)
        idem.detail = std::to_string(idempotents) + " idempotents, order " + std::to_string(k) + (root ? "" : " is not a square");
    report.checks.push_back(idem);
    return report;
}

auto cmd_enumerate(const RunConfig & config, std::ostream & out, std::ostream & err) -> int
{
    return guarded(err, [&] {
        auto report = enumerate(config.n, config.m, {config.jobs});
        if (config.output) {
            auto file = open_output(*config.output);
            write_rs_jsonl(file, report.structures);
            finish_output(file, *config.output);
        }
        int doubly = 0, left = 0, right = 0;
        for (const auto & rs : report.structures) {
            const bool l = is_left_partitioned(rs), r = is_right_partitioned(rs);
            doubly += l && r;
            left += l && ! r;
            right += r && ! l;
        }
        const auto & s = report.stats;
        out << "format " << config.n << "x" << config.m << ": " << report.structures.size() << " rectangular structures in "
            << std::fixed << std::setprecision(3) << report.seconds << " s\n";
        row(out, "doubly partitioned", doubly);
        row(out, "left partitioned only", left);
        row(out, "right partitioned only", right);
        row(out, "not partitioned", static_cast<long>(report.structures.size()) - doubly - left - right);
        row(out, "search tree nodes", s.tree_nodes);
        row(out, "candidate rectangles", s.candidates);
        row(out, "theta tests", s.theta_tests);
        row(out, "  rejected by combinatorial value", s.rejected_by_value);
        row(out, "  accepted by combinatorial value", s.accepted_by_value);
        row(out, "  accepted as a single orbit", s.accepted_by_single_orbit);
        row(out, "canonical labelings", s.canonical_labelings);
        row(out, "automorphism group computations", s.automorphism_searches);
        return int{exit_ok};
    });
}

auto cmd_filter_cg(const RunConfig & config, std::ostream & out, std::ostream & err) -> int
{
    return guarded(err, [&] {
        if (config.format != "jsonl" && config.format != "table")
            throw std::invalid_argument("unknown format \"" + config.format + "\"");
        auto report = central_groupoid_report(config.n, config.jobs);
        const auto & f = report.funnel;
        if (config.output) {
            auto file = open_output(*config.output);
            for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
                const auto & w = report.witnesses[i];
                if (config.format == "jsonl")
                    file << witness_to_json(w, &report.structures[w.source_rs]).dump() << '\n';
                else
                    file << (i ? "\n" : "") << "# witness " << i + 1 << ", structure " << w.source_rs + 1 << ", lifting "
                         << format_cycles(w.lifting) << ", " << to_string(w.provenance) << '\n'
                         << format_table(w.table);
            }
            finish_output(file, *config.output);
        }
        out << "order " << config.n * config.n << ": " << f.witnesses << " central groupoids in " << std::fixed
            << std::setprecision(3) << report.seconds << " s\n";
        row(out, "rectangular structures", f.structures);
        row(out, "  doubly partitioned", f.doubly_partitioned);
        row(out, "  singly partitioned", f.singly_partitioned);
        row(out, "  not partitioned", f.non_partitioned);
        row(out, "not partitioned, isomorphic graph pair", f.non_partitioned_with_isomorphic_pair);
        row(out, "  without an order-2 isomorphism", f.non_partitioned_without_order2);
        for (auto [count, structures] : f.order2_histogram)
            row(out, "  with " + std::to_string(count) + " order-2 isomorphism" + (count == 1 ? "" : "s"), structures);
        row(out, "conjugacy orbit representatives", f.unnatural_representatives);
        row(out, "singly partitioned, isomorphic pair", f.singly_partitioned_with_isomorphic_pair);
        row(out, "natural witnesses", f.natural_witnesses);
        row(out, "lifted witnesses", f.unnatural_witnesses);
        row(out, "central groupoids", f.witnesses);
        for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
            const auto & w = report.witnesses[i];
            out << "witness " << i + 1 << ": structure " << w.source_rs + 1 << ", lifting " << format_cycles(w.lifting)
                << ", " << to_string(w.provenance) << '\n';
        }
        return int{exit_ok};
    });
}

auto cmd_verify(const RunConfig & config, std::ostream & out, std::ostream & err) -> int
{
    return guarded(err, [&] {
        std::istringstream in{read_file(config.input)};
        auto report = verify_grid(parse_grid(in));
        out << (report.matrix ? "0-1 matrix" : "operation table") << " of order " << report.order << '\n';
        for (const auto & c : report.checks)
            out << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
        return int{report.passed() ? exit_ok : exit_verification_failed};
    });
}

auto cmd_export_dot(const RunConfig & config, std::ostream & out, std::ostream & err) -> int
{
    return guarded(err, [&] {
        const string text = read_file(config.input);
        vector<std::pair<string, GraphPair>> graphs;
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != string::npos && text[first] == '{') {
            std::istringstream in{text};
            string line;
            for (int number = 1; std::getline(in, line); ++number) {
                if (line.find_first_not_of(" \t\r") == string::npos)
                    continue;
                try {
                    auto j = nlohmann::json::parse(line);
                    if (j.contains("table")) {
                        auto w = witness_from_json(j);
                        auto rows = operation_graph(w.table);
                        GraphPair gp{w.table.order()};
                        gp.red = gp.blue = rows;
                        graphs.emplace_back("cg_" + std::to_string(graphs.size() + 1), std::move(gp));
                    }
                    else
                        graphs.emplace_back("rs_" + std::to_string(graphs.size() + 1), prs_to_graph_pair(rs_from_json(j)));
                }
                catch (const nlohmann::json::exception & e) {
                    throw ParseError(e.what(), number);
                }
                catch (const InvalidStructure & e) {
                    throw ParseError(e.what(), number);
                }
            }
        }
        else {
            std::istringstream in{text};
            auto grid = parse_grid(in);
            auto rows = grid.is_matrix() ? std::get<vector<ElementSet>>(grid.content)
                                         : operation_graph(std::get<OperationTable>(grid.content));
            GraphPair gp{static_cast<int>(rows.size())};
            gp.red = gp.blue = rows;
            graphs.emplace_back("cg_1", std::move(gp));
        }

        if (config.output) {
            std::filesystem::create_directories(*config.output);
            for (const auto & [name, gp] : graphs) {
                const string path = (std::filesystem::path{*config.output} / (name + ".dot")).string();
                auto file = open_output(path);
                file << to_dot(gp, name);
                finish_output(file, path);
            }
            out << "wrote " << graphs.size() << " DOT file" << (graphs.size() == 1 ? "" : "s") << " to " << *config.output << '\n';
        }
        else
            for (const auto & [name, gp] : graphs)
                out << to_dot(gp, name);
        return int{exit_ok};
    });
}

auto run_cli(int argc, char ** argv) -> int
{
    auto logger = spdlog::stderr_color_mt("rsenum");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char * level = std::getenv("RSENUM_LOG"))
        spdlog::set_level(spdlog::level::from_str(level));

    CLI::App app{"Isomorph-free enumeration of rectangular structures and central groupoids"};
    app.require_subcommand(1);
    RunConfig config;

    auto * enumerate_cmd = app.add_subcommand("enumerate", "enumerate n x m rectangular structures up to isomorphism");
    enumerate_cmd->add_option("n", config.n, "rows per rectangle")->required()->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("m", config.m, "columns per rectangle")->required()->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--out", config.output, "JSONL output file");
    enumerate_cmd->add_option("--jobs", config.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto * filter_cmd = app.add_subcommand("filter-cg", "central groupoids of order n^2 up to isomorphism");
    filter_cmd->add_option("n", config.n, "square root of the order")->required()->check(CLI::PositiveNumber);
    filter_cmd->add_option("--out", config.output, "witness output file");
    filter_cmd->add_option("--format", config.format, "witness file format")->check(CLI::IsMember({"jsonl", "table"}));
    filter_cmd->add_option("--jobs", config.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto * verify_cmd = app.add_subcommand("verify", "check a table or 0-1 matrix for the central groupoid properties");
    verify_cmd->add_option("file", config.input, "table or matrix file")->required();

    auto * dot_cmd = app.add_subcommand("export-dot", "write red/blue graph pairs as DOT");
    dot_cmd->add_option("file", config.input, "structure or witness JSONL, or a table")->required();
    dot_cmd->add_option("--out", config.output, "output directory");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? int{exit_ok} : int{exit_usage};
    }

    if (enumerate_cmd->parsed() && config.n * config.m > max_base_size) {
        std::cerr << "error: n*m must not exceed " << max_base_size << '\n';
        return exit_usage;
    }
    if (filter_cmd->parsed() && config.n * config.n > max_base_size) {
        std::cerr << "error: n*n must not exceed " << max_base_size << '\n';
        return exit_usage;
    }

    if (enumerate_cmd->parsed()) {
        spdlog::info("enumerating {}x{} with {} job(s)", config.n, config.m, config.jobs);
        return cmd_enumerate(config, std::cout, std::cerr);
    }
    if (filter_cmd->parsed()) {
        spdlog::info("filtering central groupoids of order {}", config.n * config.n);
        return cmd_filter_cg(config, std::cout, std::cerr);
    }
    if (verify_cmd->parsed())
        return cmd_verify(config, std::cout, std::cerr);
    return cmd_export_dot(config, std::cout, std::cerr);
}

}
