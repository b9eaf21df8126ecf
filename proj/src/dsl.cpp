#include "recur/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace recur {

ParseError::ParseError(std::string origin, int line, int column, const std::string& message)
    : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      origin_(std::move(origin)), line_(line), column_(column), message_(message) {}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const SpecSource& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        const std::string& s = src_.text;
        while (pos_ < s.size()) {
            const char c = s[pos_];
            if (c == '#') {
                while (pos_ < s.size() && s[pos_] != '\n')
                    advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            Token t;
            t.line = line_;
            t.column = column_;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Ident;
                while (pos_ < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos_])) ||
                                           s[pos_] == '_')) {
                    t.text += s[pos_];
                    advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Tok::Int;
                while (pos_ < s.size() && std::isdigit(static_cast<unsigned char>(s[pos_]))) {
                    t.text += s[pos_];
                    advance();
                }
            } else if (std::string_view(":()=+-*;").find(c) != std::string_view::npos) {
                t.kind = Tok::Punct;
                t.text = std::string(1, c);
                advance();
            } else {
                std::string shown = std::isprint(static_cast<unsigned char>(c))
                                        ? std::string("'") + c + "'"
                                        : "byte 0x" + hex(static_cast<unsigned char>(c));
                throw ParseError(src_.origin, line_, column_, "unexpected character " + shown);
            }
            out.push_back(std::move(t));
        }
        Token end;
        end.line = line_;
        end.column = column_;
        out.push_back(end);
        return out;
    }

private:
    static std::string hex(unsigned char c) {
        const char* digits = "0123456789abcdef";
        return {digits[c >> 4], digits[c & 15]};
    }

    void advance() {
        if (src_.text[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const SpecSource& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End:
        return "end of input";
    case Tok::Int:
        return "integer " + t.text;
    case Tok::Ident:
        return "identifier '" + t.text + "'";
    case Tok::Punct:
        return "'" + t.text + "'";
    }
    return "token";
}

class Parser {
public:
    Parser(const SpecSource& src, std::vector<Token> tokens)
        : src_(src), toks_(std::move(tokens)) {}

    std::vector<SequenceSpec> file() {
        std::vector<SequenceSpec> out;
        while (peek().kind != Tok::End)
            out.push_back(statement());
        return out;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        throw ParseError(src_.origin, at.line, at.column, msg);
    }

    const Token& expect_punct(char c) {
        if (!at_punct(c))
            fail(peek(), std::string("expected '") + c + "', found " + describe(peek()));
        return next();
    }

    const Token& expect_ident(const std::string& what) {
        if (peek().kind != Tok::Ident)
            fail(peek(), "expected " + what + ", found " + describe(peek()));
        return next();
    }

    void expect_name(const std::string& name) {
        const Token& t = expect_ident("sequence name '" + name + "'");
        if (t.text != name)
            fail(t, "expected sequence name '" + name + "', found '" + t.text + "'");
    }

    Integer unsigned_int() {
        if (peek().kind != Tok::Int)
            fail(peek(), "expected integer, found " + describe(peek()));
        return Integer(next().text, 10);
    }

    Integer signed_int() {
        bool negative = false;
        if (at_punct('+') || at_punct('-'))
            negative = next().text[0] == '-';
        Integer v = unsigned_int();
        return negative ? Integer(-v) : v;
    }

    Index index_value(const Token& at, const Integer& v) {
        if (!v.fits_slong_p())
            fail(at, "index " + v.get_str() + " out of range");
        return v.get_si();
    }

    SequenceSpec statement() {
        const Token& kw = expect_ident("'seq'");
        if (kw.text != "seq")
            fail(kw, "expected 'seq', found '" + kw.text + "'");
        const Token& name_tok = expect_ident("sequence name");
        if (name_tok.text == "seq" || name_tok.text == "n")
            fail(name_tok, "'" + name_tok.text + "' is reserved");
        const std::string name = name_tok.text;
        expect_punct(':');

        expect_name(name);
        expect_punct('(');
        expect_n();
        expect_punct(')');
        expect_punct('=');

        const Token& rhs_start = peek();
        std::map<Index, Integer> terms;
        bool first = true;
        while (true) {
            bool negative = false;
            if (at_punct('+') || at_punct('-')) {
                negative = next().text[0] == '-';
            } else if (!first) {
                break;
            }
            first = false;
            Integer coeff = 1;
            if (peek().kind == Tok::Int) {
                coeff = unsigned_int();
                expect_punct('*');
            }
            if (negative)
                coeff = -coeff;
            expect_name(name);
            expect_punct('(');
            expect_n();
            expect_punct('-');
            const Token& lag_tok = peek();
            const Index lag = index_value(lag_tok, unsigned_int());
            if (lag < 1)
                fail(lag_tok, "lag must be at least 1");
            if (lag > 1'000'000)
                fail(lag_tok, "lag " + std::to_string(lag) + " is too large");
            expect_punct(')');
            if (!terms.emplace(lag, coeff).second)
                fail(lag_tok, "duplicate lag " + std::to_string(lag));
        }
        if (terms.empty())
            fail(rhs_start, "recurrence has no terms");

        const Index order = terms.rbegin()->first;
        if (terms.rbegin()->second == 0)
            fail(rhs_start, "trailing coefficient (lag " + std::to_string(order) + ") is zero");

        std::map<Index, Integer> seeds;
        std::optional<Token> first_seed;
        while (at_punct(';')) {
            next();
            if (peek().kind == Tok::End ||
                (peek().kind == Tok::Ident && peek().text == "seq"))
                break;
            const Token& seed_tok = peek();
            if (!first_seed)
                first_seed = seed_tok;
            expect_name(name);
            expect_punct('(');
            const Token& idx_tok = peek();
            const Index idx = index_value(idx_tok, signed_int());
            expect_punct(')');
            expect_punct('=');
            Integer value = signed_int();
            if (!seeds.emplace(idx, std::move(value)).second)
                fail(idx_tok, "duplicate seed index " + std::to_string(idx));
        }
        if (peek().kind != Tok::End && !(peek().kind == Tok::Ident && peek().text == "seq"))
            fail(peek(), "expected ';' or end of statement, found " + describe(peek()));

        const Token& seed_pos = first_seed ? *first_seed : peek();
        if (static_cast<Index>(seeds.size()) != order)
            fail(seed_pos, "order " + std::to_string(order) + " recurrence needs " +
                               std::to_string(order) + " seeds, got " +
                               std::to_string(seeds.size()));
        const Index start = seeds.begin()->first;
        if (seeds.rbegin()->first - start != order - 1)
            fail(seed_pos, "seed indices must be consecutive");

        SequenceSpec spec;
        spec.name = name;
        spec.coeffs.assign(static_cast<std::size_t>(order), Integer(0));
        for (auto& [lag, c] : terms)
            spec.coeffs[static_cast<std::size_t>(lag - 1)] = c;
        for (auto& entry : seeds)
            spec.seeds.push_back(entry.second);
        spec.seed_start = start;
        return spec;
    }

    void expect_n() {
        const Token& t = expect_ident("'n'");
        if (t.text != "n")
            fail(t, "expected 'n', found '" + t.text + "'");
    }

    const SpecSource& src_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

} // namespace

std::vector<SequenceSpec> parse_all(const SpecSource& source) {
    Parser p(source, Lexer(source).run());
    return p.file();
}

SequenceSpec parse(const SpecSource& source) {
    auto all = parse_all(source);
    if (all.size() != 1)
        throw ParseError(source.origin, 1, 1,
                         "expected exactly one 'seq' statement, found " +
                             std::to_string(all.size()));
    return std::move(all.front());
}

SpecSource read_source(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open spec file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return {buf.str(), path.string()};
}

std::string format(const SequenceSpec& spec) {
    validate(spec);
    std::string out = "seq " + spec.name + ": " + spec.name + "(n)=";
    bool first = true;
    for (std::size_t i = 0; i < spec.order(); ++i) {
        const Integer& c = spec.coeffs[i];
        if (c == 0)
            continue;
        if (c < 0)
            out += '-';
        else if (!first)
            out += '+';
        const Integer mag = abs(c);
        if (mag != 1)
            out += mag.get_str() + "*";
        out += spec.name + "(n-" + std::to_string(i + 1) + ")";
        first = false;
    }
    for (std::size_t i = 0; i < spec.seeds.size(); ++i)
        out += "; " + spec.name + "(" + std::to_string(spec.seed_start + static_cast<Index>(i)) +
               ")=" + spec.seeds[i].get_str();
    return out;
}

} // namespace recur
