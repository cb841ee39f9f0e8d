#include "lnd/parse.hpp"

#include <cctype>

namespace lnd {

namespace {

enum class Tok { End, Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    Tok kind = Tok::End;
    std::string value;
    int tok_line = 1, tok_col = 1;

    explicit Lexer(std::string_view t) : text(t) { advance(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_line, tok_col); }

    void step() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void advance() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) step();
        tok_line = line;
        tok_col = col;
        if (pos >= text.size()) {
            kind = Tok::End;
            return;
        }
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            value.clear();
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                value += text[pos];
                step();
            }
            kind = Tok::Int;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            value.clear();
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                value += text[pos];
                step();
            }
            kind = Tok::Ident;
            return;
        }
        step();
        switch (c) {
            case '+': kind = Tok::Plus; return;
            case '-': kind = Tok::Minus; return;
            case '*': kind = Tok::Star; return;
            case '/': kind = Tok::Slash; return;
            case '^': kind = Tok::Caret; return;
            case '(': kind = Tok::LParen; return;
            case ')': kind = Tok::RParen; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", tok_line, tok_col);
        }
    }
};

struct Parser {
    Lexer lex;
    VarSetPtr vs;

    Parser(std::string_view text, VarSetPtr v) : lex(text), vs(std::move(v)) {}

    RatFn parse() {
        RatFn e = expr();
        if (lex.kind != Tok::End) lex.fail("trailing input");
        return e;
    }

    RatFn expr() {
        bool neg = false;
        if (lex.kind == Tok::Minus) {
            neg = true;
            lex.advance();
        }
        RatFn acc = term();
        if (neg) acc = -acc;
        while (lex.kind == Tok::Plus || lex.kind == Tok::Minus) {
            bool minus = lex.kind == Tok::Minus;
            lex.advance();
            RatFn t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    RatFn term() {
        RatFn acc = factor();
        while (lex.kind == Tok::Star || lex.kind == Tok::Slash) {
            bool div = lex.kind == Tok::Slash;
            int l = lex.tok_line, c = lex.tok_col;
            lex.advance();
            RatFn f = factor();
            if (div) {
                if (f.is_zero()) throw ParseError("division by the zero polynomial", l, c);
                acc = acc / f;
            } else {
                acc = acc * f;
            }
        }
        return acc;
    }

    RatFn factor() {
        RatFn b = base();
        if (lex.kind == Tok::Caret) {
            lex.advance();
            if (lex.kind != Tok::Int) lex.fail("expected nonnegative integer exponent");
            unsigned long e = std::stoul(lex.value);
            lex.advance();
            return b.pow(static_cast<std::uint32_t>(e));
        }
        return b;
    }

    RatFn base() {
        switch (lex.kind) {
            case Tok::Int: {
                Rat c(lex.value);
                lex.advance();
                return RatFn::constant(vs, c);
            }
            case Tok::Ident: {
                auto idx = vs->index_of(lex.value);
                if (!idx) lex.fail("unknown variable name '" + lex.value + "'");
                lex.advance();
                return RatFn::variable(vs, *idx);
            }
            case Tok::LParen: {
                lex.advance();
                RatFn e = expr();
                if (lex.kind != Tok::RParen) lex.fail("expected ')'");
                lex.advance();
                return e;
            }
            default:
                lex.fail("expected integer, variable, or '('");
        }
    }
};

}  // namespace

RatFn parse_expr(std::string_view text, const VarSetPtr& vs) {
    return Parser(text, vs).parse();
}

Poly parse_poly(std::string_view text, const VarSetPtr& vs) {
    RatFn r = parse_expr(text, vs);
    if (!r.is_poly())
        throw ParseError("expected a polynomial, got a proper rational function", 1, 1);
    return r.as_poly();
}

}  // namespace lnd
