#pragma once

// The line-oriented configuration file format:
//
//   period <m> <n>
//   path <x0> <y0> <steps over {1,2}>
//   edge <V|H> <x> <y> <mult>
//   involution <star|dagger>
//   xi <re> <im>
//
// '#' starts a comment. The period must come before any path or edge.

#include <charconv>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sixv/configuration.hpp"
#include "sixv/topology.hpp"

namespace sixv {

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, Semantic };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                             (kind == Kind::Syntax ? "syntax error: " : "error: ") + message),
          kind(kind), line(line), column(column), message(message) {}

    Kind kind;
    std::size_t line;
    std::size_t column;
    std::string message;
};

struct ConfigFile {
    Lattice lattice{1, 1};
    std::vector<VertexPath> paths;
    std::vector<std::pair<EdgeRef, Int>> edges;
    Involution involution = Involution::Star;
    std::optional<std::complex<double>> xi;

    Configuration configuration() const {
        std::vector<std::pair<EdgeRef, Int>> all;
        for (const auto& p : paths)
            for (EdgeRef e : path_edges(lattice, p)) all.emplace_back(e, 1);
        all.insert(all.end(), edges.begin(), edges.end());
        return Configuration::from_edges(lattice, all);
    }
};

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

class LineParser {
public:
    LineParser(std::size_t line, std::vector<Token> toks) : line_(line), toks_(std::move(toks)) {}

    [[noreturn]] void fail(const Token& t, const std::string& msg,
                           ParseError::Kind kind = ParseError::Kind::Syntax) const {
        throw ParseError(kind, line_, t.column, msg);
    }

    const Token& arg(std::size_t k, const char* what) const {
        if (k >= toks_.size()) {
            const Token& last = toks_.back();
            throw ParseError(ParseError::Kind::Syntax, line_, last.column + last.text.size(),
                             std::string("expected ") + what);
        }
        return toks_[k];
    }

    void expect_count(std::size_t n) const {
        if (toks_.size() > n) fail(toks_[n], "unexpected token '" + std::string(toks_[n].text) + "'");
    }

    Int integer(std::size_t k, const char* what) const {
        const Token& t = arg(k, what);
        Int v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec == std::errc::result_out_of_range) fail(t, std::string(what) + " is out of range");
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
            fail(t, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
        return v;
    }

    double real(std::size_t k, const char* what) const {
        const Token& t = arg(k, what);
        std::string s(t.text);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            fail(t, std::string("expected ") + what + ", got '" + s + "'");
        }
        if (used != s.size()) fail(t, std::string("expected ") + what + ", got '" + s + "'");
        return v;
    }

    const Token& token(std::size_t k) const { return toks_[k]; }

private:
    std::size_t line_;
    std::vector<Token> toks_;
};

}  // namespace detail

inline ConfigFile parse_config(std::string_view text) {
    using Kind = ParseError::Kind;
    ConfigFile out;
    bool have_period = false, have_involution = false;
    std::size_t line_no = 0, last_line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        last_line = line_no;
        detail::LineParser lp(line_no, toks);
        const std::string_view kw = toks[0].text;

        if (kw == "period") {
            if (have_period) lp.fail(toks[0], "duplicate period declaration", Kind::Semantic);
            Int m = lp.integer(1, "m"), n = lp.integer(2, "n");
            lp.expect_count(3);
            try {
                out.lattice = Lattice(m, n);
            } catch (const std::invalid_argument& e) {
                lp.fail(lp.token(1), e.what(), Kind::Semantic);
            }
            have_period = true;
        } else if (kw == "path" || kw == "edge") {
            if (!have_period) lp.fail(toks[0], "the period must be declared before any " + std::string(kw), Kind::Semantic);
            if (kw == "path") {
                Int x = lp.integer(1, "x0"), y = lp.integer(2, "y0");
                const auto& st = lp.arg(3, "a step word");
                lp.expect_count(4);
                for (std::size_t k = 0; k < st.text.size(); ++k) {
                    if (st.text[k] != '1' && st.text[k] != '2')
                        throw ParseError(Kind::Syntax, line_no, st.column + k,
                                         std::string("path step '") + st.text[k] + "' is not 1 or 2");
                }
                VertexPath p{{x, y}, std::string(st.text)};
                try {
                    validate_path(out.lattice, p);
                } catch (const PathError& e) {
                    lp.fail(st, e.what(), Kind::Semantic);
                }
                out.paths.push_back(std::move(p));
            } else {
                const auto& o = lp.arg(1, "V or H");
                if (o.text != "V" && o.text != "H")
                    lp.fail(o, "edge orientation must be V or H, got '" + std::string(o.text) + "'");
                Int x = lp.integer(2, "x"), y = lp.integer(3, "y"), k = lp.integer(4, "multiplicity");
                lp.expect_count(5);
                if (k <= 0) lp.fail(lp.token(4), "edge multiplicity must be positive", Kind::Semantic);
                out.edges.emplace_back(o.text == "V" ? EdgeRef::V(x, y) : EdgeRef::H(x, y), k);
            }
        } else if (kw == "involution") {
            if (have_involution) lp.fail(toks[0], "duplicate involution declaration", Kind::Semantic);
            const auto& v = lp.arg(1, "star or dagger");
            lp.expect_count(2);
            if (v.text == "star") {
                out.involution = Involution::Star;
            } else if (v.text == "dagger") {
                out.involution = Involution::Dagger;
            } else {
                lp.fail(v, "involution must be star or dagger, got '" + std::string(v.text) + "'");
            }
            have_involution = true;
        } else if (kw == "xi") {
            if (out.xi) lp.fail(toks[0], "duplicate xi declaration", Kind::Semantic);
            double re = lp.real(1, "a real part"), im = lp.real(2, "an imaginary part");
            lp.expect_count(3);
            out.xi = std::complex<double>(re, im);
        } else {
            lp.fail(toks[0], "unknown declaration '" + std::string(kw) + "'");
        }
    }
    if (!have_period) throw ParseError(Kind::Semantic, last_line + 1, 1, "missing period declaration");
    return out;
}

/// A file that parses back to `cfg`: the period followed by one edge line per
/// supported edge, at its canonical representative.
inline std::string to_config_text(const Configuration& cfg, Involution inv = Involution::Star,
                                  std::optional<std::complex<double>> xi = std::nullopt) {
    std::ostringstream os;
    os << "period " << cfg.lattice().m() << ' ' << cfg.lattice().n() << '\n';
    for (const auto& [e, k] : cfg.edges())
        os << "edge " << (e.orientation == Orientation::Vertical ? 'V' : 'H') << ' ' << e.x << ' ' << e.y
           << ' ' << k << '\n';
    if (inv != Involution::Star) os << "involution " << to_string(inv) << '\n';
    if (xi) {
        os.precision(17);
        os << "xi " << xi->real() << ' ' << xi->imag() << '\n';
    }
    return os.str();
}

}  // namespace sixv
