#include <rsenum/io.hh>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

using nlohmann::json;
using std::string;
using std::vector;

namespace rsenum {

ParseError::ParseError(const string & message, int line, int column) :
    std::runtime_error(line > 0 ? "line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") + ": " + message
                                : message),
    line_(line),
    column_(column)
{
}

namespace {
    auto to_one_based(ElementSet s) -> vector<int>
    {
        auto xs = bits::elements(s);
        for (auto & x : xs)
            ++x;
        return xs;
    }

    auto from_one_based(const json & j, int k) -> ElementSet
    {
        if (! j.is_array())
            throw InvalidStructure("expected an array of elements");
        ElementSet s = 0;
        for (const auto & v : j) {
            if (! v.is_number_integer())
                throw InvalidStructure("element is not an integer");
            const int x = v.get<int>();
            if (x < 1 || x > k)
                throw InvalidStructure("element " + std::to_string(x) + " outside 1.." + std::to_string(k));
            if (bits::contains(s, x - 1))
                throw InvalidStructure("element " + std::to_string(x) + " repeated");
            s |= bits::single(x - 1);
        }
        return s;
    }

    auto parse_int(const string & token) -> std::optional<int>
    {
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            return std::nullopt;
        return value;
    }

    struct Token
    {
        string text;
        int column;
    };

    struct Line
    {
        int number;
        vector<Token> tokens;
    };

    auto is_separator_line(const string & s) -> bool
    {
        return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '-' || c == '=' || c == '+' || c == '|'; });
    }

    auto tokenize(std::istream & in) -> vector<Line>
    {
        vector<Line> lines;
        string text;
        for (int number = 1; std::getline(in, text); ++number) {
            if (! text.empty() && text.back() == '\r')
                text.pop_back();
            auto first = text.find_first_not_of(" \t");
            if (first == string::npos || text[first] == '#' || is_separator_line(text))
                continue;
            Line line{number, {}};
            std::size_t i = 0;
            auto separator = [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '|' || c == '&' || c == ':'; };
            while (i < text.size()) {
                while (i < text.size() && separator(text[i]))
                    ++i;
                std::size_t j = i;
                while (j < text.size() && ! separator(text[j]))
                    ++j;
                if (j > i)
                    line.tokens.push_back({text.substr(i, j - i), static_cast<int>(i) + 1});
                i = j;
            }
            lines.push_back(std::move(line));
        }
        return lines;
    }

    auto is_counting_sequence(const vector<Token> & tokens, std::size_t from) -> bool
    {
        for (std::size_t i = from; i < tokens.size(); ++i)
            if (parse_int(tokens[i].text) != static_cast<int>(i - from + 1))
                return false;
        return true;
    }
}

auto rs_to_json(const PRS & rs) -> json
{
    json rects = json::array();
    for (const auto & r : rs.rectangles())
        rects.push_back({{"rows", to_one_based(r.rows())}, {"cols", to_one_based(r.cols())}});
    return {{"n", rs.base().rows()}, {"m", rs.base().cols()}, {"rectangles", rects}};
}

auto rs_from_json(const json & j) -> PRS
{
    if (! j.is_object() || ! j.contains("n") || ! j.contains("m") || ! j.contains("rectangles"))
        throw InvalidStructure("structure record needs fields n, m and rectangles");
    BaseSet base{j.at("n").get<int>(), j.at("m").get<int>()};
    vector<Rectangle> rectangles;
    for (const auto & r : j.at("rectangles")) {
        if (! r.contains("rows") || ! r.contains("cols"))
            throw InvalidStructure("rectangle needs fields rows and cols");
        rectangles.emplace_back(from_one_based(r.at("rows"), base.size()), from_one_based(r.at("cols"), base.size()));
    }
    return PRS{base, std::move(rectangles)};
}

void write_rs_jsonl(std::ostream & out, const vector<PRS> & structures)
{
    for (const auto & rs : structures)
        out << rs_to_json(rs).dump() << '\n';
}

auto read_rs_jsonl(std::istream & in) -> vector<PRS>
{
    vector<PRS> result;
    string text;
    for (int line = 1; std::getline(in, text); ++line) {
        if (text.find_first_not_of(" \t\r") == string::npos)
            continue;
        try {
            result.push_back(rs_from_json(json::parse(text)));
        }
        catch (const json::exception & e) {
            throw ParseError(e.what(), line);
        }
        catch (const std::invalid_argument & e) {
            throw ParseError(e.what(), line);
        }
    }
    return result;
}

auto format_cycles(const Permutation & p) -> string
{
    string s;
    for (const auto & cycle : p.cycles()) {
        s += '(';
        for (std::size_t i = 0; i < cycle.size(); ++i)
            s += (i ? "," : "") + std::to_string(cycle[i] + 1);
        s += ')';
    }
    return s.empty() ? "()" : s;
}

auto parse_cycles(const string & text, int size) -> Permutation
{
    vector<int> images(size);
    for (int x = 0; x < size; ++x)
        images[x] = x;
    vector<bool> seen(size, false);
    std::size_t i = 0;
    auto fail = [&](const string & why) -> Permutation { throw ParseError("cycle notation \"" + text + "\": " + why, 0); };
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] != '(')
            return fail("expected '('");
        ++i;
        vector<int> cycle;
        for (;;) {
            skip_space();
            if (i < text.size() && text[i] == ')' && cycle.empty()) {
                ++i;
                break;
            }
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            auto value = parse_int(text.substr(i, j - i));
            if (! value || *value < 1 || *value > size)
                return fail("bad point");
            if (seen[*value - 1])
                return fail("point " + std::to_string(*value) + " repeated");
            seen[*value - 1] = true;
            cycle.push_back(*value - 1);
            i = j;
            skip_space();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            return fail("expected ',' or ')'");
        }
        for (std::size_t c = 0; c < cycle.size(); ++c)
            images[cycle[c]] = cycle[(c + 1) % cycle.size()];
        skip_space();
    }
    return Permutation{std::move(images)};
}

auto format_table(const OperationTable & op) -> string
{
    string s;
    for (int a = 0; a < op.order(); ++a) {
        for (int b = 0; b < op.order(); ++b)
            s += (b ? " " : "") + std::to_string(op(a, b) + 1);
        s += '\n';
    }
    return s;
}

auto parse_grid(std::istream & in) -> ParsedGrid
{
    auto lines = tokenize(in);
    if (lines.empty())
        throw ParseError("empty grid", 1);

    // Header row: a corner symbol, or just the column numbers.
    const bool corner = ! parse_int(lines.front().tokens.front().text);
    const bool numbers_only = lines.size() >= 2 && lines.front().tokens.size() == lines.size() - 1
        && is_counting_sequence(lines.front().tokens, 0);
    if (corner || numbers_only)
        lines.erase(lines.begin());
    if (lines.empty())
        throw ParseError("grid has a header but no rows", 1);
    const std::size_t k = lines.size();

    for (const auto & line : lines)
        for (const auto & t : line.tokens)
            if (! parse_int(t.text))
                throw ParseError("not an integer: \"" + t.text + "\"", line.number, t.column);

    const bool row_labels = std::all_of(lines.begin(), lines.end(), [&](const Line & l) { return l.tokens.size() == k + 1; })
        && [&] {
               for (std::size_t i = 0; i < k; ++i)
                   if (parse_int(lines[i].tokens.front().text) != static_cast<int>(i + 1))
                       return false;
               return true;
           }();
    vector<vector<std::pair<int, const Token *>>> cells(k);
    bool has_zero = false;
    for (std::size_t i = 0; i < k; ++i) {
        const auto & tokens = lines[i].tokens;
        if (tokens.size() != k + (row_labels ? 1 : 0))
            throw ParseError("row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(k), lines[i].number);
        for (std::size_t j = row_labels ? 1 : 0; j < tokens.size(); ++j) {
            const int v = *parse_int(tokens[j].text);
            has_zero |= v == 0;
            cells[i].emplace_back(v, &tokens[j]);
        }
    }
    if (k > max_base_size)
        throw ParseError("order " + std::to_string(k) + " exceeds the supported maximum", lines.front().number);

    if (has_zero) {
        vector<ElementSet> rows(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const auto [v, token] = cells[i][j];
                if (v != 0 && v != 1)
                    throw ParseError("matrix entry must be 0 or 1", lines[i].number, token->column);
                if (v)
                    rows[i] |= bits::single(static_cast<int>(j));
            }
        return {std::move(rows)};
    }
    OperationTable op{static_cast<int>(k)};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const auto [v, token] = cells[i][j];
            if (v < 1 || v > static_cast<int>(k))
                throw ParseError("table entry outside 1.." + std::to_string(k), lines[i].number, token->column);
            op.set(static_cast<int>(i), static_cast<int>(j), v - 1);
        }
    return {std::move(op)};
}

auto parse_table(std::istream & in) -> OperationTable
{
    auto grid = parse_grid(in);
    if (grid.is_matrix())
        throw ParseError("expected an operation table, found a 0-1 matrix", 1);
    return std::get<OperationTable>(std::move(grid.content));
}

auto witness_to_json(const CentralGroupoidWitness & w, const PRS * structure) -> json
{
    json table = json::array();
    for (int a = 0; a < w.table.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < w.table.order(); ++b)
            row.push_back(w.table(a, b) + 1);
        table.push_back(std::move(row));
    }
    json j = {{"order", w.table.order()}, {"source_rs", w.source_rs + 1}, {"lifting", format_cycles(w.lifting)},
        {"provenance", to_string(w.provenance)}, {"table", std::move(table)}};
    if (structure)
        j["structure"] = rs_to_json(*structure);
    return j;
}

auto witness_from_json(const json & j) -> CentralGroupoidWitness
{
    CentralGroupoidWitness w;
    const auto & rows = j.at("table");
    const int k = static_cast<int>(rows.size());
    vector<int> entries;
    for (const auto & row : rows) {
        if (static_cast<int>(row.size()) != k)
            throw InvalidStructure("witness table is not square");
        for (const auto & v : row) {
            const int x = v.get<int>();
            if (x < 1 || x > k)
                throw InvalidStructure("witness table entry outside 1.." + std::to_string(k));
            entries.push_back(x - 1);
        }
    }
    w.table = OperationTable{k, std::move(entries)};
    w.source_rs = j.value("source_rs", 1) - 1;
    w.lifting = parse_cycles(j.value("lifting", string{"()"}), k);
    w.provenance = j.value("provenance", string{"lifted"}) == "natural" ? Provenance::natural : Provenance::lifted;
    return w;
}

auto to_dot(const GraphPair & gp, const string & name) -> string
{
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (int a = 0; a < gp.order; ++a)
        out << "  " << a + 1 << ";\n";
    for (int a = 0; a < gp.order; ++a)
        bits::for_each(gp.red[a] | gp.blue[a], [&](int b) {
            const bool red = bits::contains(gp.red[a], b), blue = bits::contains(gp.blue[a], b);
            out << "  " << a + 1 << " -> " << b + 1 << " [color=\"" << (red && blue ? "red:blue" : red ? "red" : "blue") << "\"];\n";
        });
    out << "}\n";
    return out.str();
}

namespace {
    class DotLexer
    {
    public:
        explicit DotLexer(const string & text) : text_(text) {}

        // Identifiers, numerals, quoted strings, "->" and single punctuation.
        auto next() -> std::optional<string>
        {
            skip();
            if (pos_ >= text_.size())
                return std::nullopt;
            const char c = text_[pos_];
            if (c == '"') {
                auto end = text_.find('"', pos_ + 1);
                if (end == string::npos)
                    throw ParseError("unterminated string", line_);
                string s = text_.substr(pos_, end - pos_ + 1);
                pos_ = end + 1;
                return s;
            }
            if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                pos_ += 2;
                return "->";
            }
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                auto start = pos_;
                while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    ++pos_;
                return text_.substr(start, pos_ - start);
            }
            ++pos_;
            return string(1, c);
        }

        auto expect() -> string
        {
            auto t = next();
            if (! t)
                throw ParseError("unexpected end of DOT input", line_);
            return *t;
        }

        [[nodiscard]] auto line() const noexcept -> int { return line_; }

    private:
        void skip()
        {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                line_ += text_[pos_] == '\n';
                ++pos_;
            }
        }

        const string & text_;
        std::size_t pos_ = 0;
        int line_ = 1;
    };

    auto node_id(const string & token, int line) -> int
    {
        auto v = parse_int(token);
        if (! v || *v < 1)
            throw ParseError("node identifier must be a positive integer, got \"" + token + "\"", line);
        return *v;
    }
}

auto parse_dot(const string & text) -> vector<DotGraph>
{
    DotLexer lex{text};
    vector<DotGraph> graphs;
    while (auto keyword = lex.next()) {
        if (*keyword != "digraph")
            throw ParseError("expected \"digraph\", got \"" + *keyword + "\"", lex.line());
        DotGraph g;
        g.name = lex.expect();
        if (lex.expect() != "{")
            throw ParseError("expected '{'", lex.line());
        for (string t = lex.expect(); t != "}"; t = lex.expect()) {
            if (t == ";")
                continue;
            const int from = node_id(t, lex.line());
            string after = lex.expect();
            if (after == ";") {
                g.nodes.push_back(from);
                continue;
            }
            if (after != "->")
                throw ParseError("expected ';' or '->'", lex.line());
            const int to = node_id(lex.expect(), lex.line());
            if (lex.expect() != "[" || lex.expect() != "color" || lex.expect() != "=")
                throw ParseError("expected [color=...]", lex.line());
            string colour = lex.expect();
            if (colour.size() >= 2 && colour.front() == '"')
                colour = colour.substr(1, colour.size() - 2);
            if (lex.expect() != "]" || lex.expect() != ";")
                throw ParseError("expected \"];\"", lex.line());
            if (colour == "red" || colour == "red:blue")
                g.red.insert({from, to});
            if (colour == "blue" || colour == "red:blue")
                g.blue.insert({from, to});
            if (colour != "red" && colour != "blue" && colour != "red:blue")
                throw ParseError("unknown edge colour \"" + colour + "\"", lex.line());
        }
        graphs.push_back(std::move(g));
    }
    return graphs;
}

auto dot_to_graph_pair(const DotGraph & g) -> GraphPair
{
    const int k = static_cast<int>(g.nodes.size());
    GraphPair gp{k};
    auto check = [&](int x) {
        if (x > k)
            throw InvalidStructure("edge endpoint " + std::to_string(x) + " is not a declared node");
        return x - 1;
    };
    for (auto [a, b] : g.red)
        gp.add_red(check(a), check(b));
    for (auto [a, b] : g.blue)
        gp.add_blue(check(a), check(b));
    return gp;
}

}
