#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "cycert/errors.hpp"
#include "cycert/quadext.hpp"
#include "cycert/wpoly.hpp"

namespace cycert {

namespace detail {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            tokens.push_back({Token::Number, s.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            tokens.push_back({Token::Ident, s.substr(start, i - start), start});
            continue;
        }
        Token::Kind kind;
        switch (c) {
            case '+': kind = Token::Plus; break;
            case '-': kind = Token::Minus; break;
            case '*': kind = Token::Star; break;
            case '/': kind = Token::Slash; break;
            case '^': kind = Token::Caret; break;
            case '(': kind = Token::LParen; break;
            case ')': kind = Token::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        tokens.push_back({kind, std::string(1, c), i});
        ++i;
    }
    tokens.push_back({Token::End, "", s.size()});
    return tokens;
}

/// Recursive-descent evaluator over a value type supplied by the traits
/// object: polynomials for cone equations, quadratic-field elements for
/// weight expressions. Grammar: sums of products of signed powers, with '/'
/// restricted by the traits (constant divisor for polynomials).
template <typename Traits>
class Parser {
public:
    Parser(const std::string& text, const Traits& traits)
        : tokens_(tokenize(text)), traits_(traits) {}

    typename Traits::Value parse() {
        auto v = expr();
        expect(Token::End, "trailing input");
        return v;
    }

private:
    using Value = typename Traits::Value;

    Value expr() {
        Value v = term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool minus = next().kind == Token::Minus;
            Value rhs = term();
            v = minus ? traits_.sub(v, rhs) : traits_.add(v, rhs);
        }
        return v;
    }

    Value term() {
        Value v = factor();
        while (peek().kind == Token::Star || peek().kind == Token::Slash) {
            const Token& op = next();
            Value rhs = factor();
            v = op.kind == Token::Star ? traits_.mul(v, rhs) : traits_.div(v, rhs, op.pos);
        }
        return v;
    }

    Value factor() {
        if (peek().kind == Token::Minus) {
            next();
            return traits_.neg(factor());
        }
        return power();
    }

    Value power() {
        Value base = atom();
        if (peek().kind == Token::Caret) {
            std::size_t pos = next().pos;
            if (peek().kind == Token::Minus)
                throw ParseError("negative exponent", peek().pos);
            const Token& e = expect(Token::Number, "exponent must be a nonnegative integer");
            unsigned long exp = std::stoul(e.text);
            return traits_.pow(base, exp, pos);
        }
        return base;
    }

    Value atom() {
        const Token& t = next();
        switch (t.kind) {
            case Token::Number:
                return traits_.number(t.text);
            case Token::Ident:
                return traits_.ident(*this, t);
            case Token::LParen: {
                Value v = expr();
                expect(Token::RParen, "expected ')'");
                return v;
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    const Token& peek() const { return tokens_[index_]; }
    const Token& next() { return tokens_[index_++]; }
    const Token& expect(Token::Kind kind, const std::string& msg) {
        if (peek().kind != kind) throw ParseError(msg, peek().pos);
        return next();
    }

    std::vector<Token> tokens_;
    Traits traits_;
    std::size_t index_ = 0;

public:
    // Used by traits that need to consume additional tokens (sqrt calls).
    const Token& expect_public(Token::Kind kind, const std::string& msg) {
        return expect(kind, msg);
    }
};

struct WPolyTraits {
    using Value = WPoly;
    const std::vector<std::string>& names;

    Value number(const std::string& text) const {
        return WPoly::constant(names.size(), GaussianRational(Rational(Int(text))));
    }
    Value ident(Parser<WPolyTraits>& parser, const Token& t) const {
        (void)parser;
        if (t.text == "i") return WPoly::constant(names.size(), GaussianRational::i());
        for (std::size_t j = 0; j < names.size(); ++j)
            if (names[j] == t.text) return WPoly::variable(names.size(), j);
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value neg(const Value& a) const { return -a; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b, std::size_t pos) const {
        if (b.num_terms() != 1 || !b.terms().begin()->first.is_constant())
            throw ParseError("divisor must be a nonzero constant", pos);
        GaussianRational inv = GaussianRational(1) / b.terms().begin()->second;
        return inv * a;
    }
    Value pow(const Value& base, unsigned long exp, std::size_t pos) const {
        (void)pos;
        Value r = WPoly::constant(names.size(), GaussianRational(1));
        for (unsigned long k = 0; k < exp; ++k) r = r * base;
        return r;
    }
};

struct QuadExtTraits {
    using Value = QuadExt;

    Value number(const std::string& text) const { return QuadExt(Rational(Int(text))); }
    Value ident(Parser<QuadExtTraits>& parser, const Token& t) const {
        if (t.text != "sqrt")
            throw ParseError("unknown symbol '" + t.text + "' in weight expression", t.pos);
        parser.expect_public(Token::LParen, "expected '(' after sqrt");
        const Token& arg = parser.expect_public(Token::Number, "sqrt expects an integer");
        parser.expect_public(Token::RParen, "expected ')'");
        return QuadExt::sqrt_of(Int(arg.text));
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value neg(const Value& a) const { return -a; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b, std::size_t pos) const {
        if (b.is_zero()) throw ParseError("division by zero", pos);
        return a / b;
    }
    Value pow(const Value& base, unsigned long exp, std::size_t pos) const {
        (void)pos;
        Value r(1);
        for (unsigned long k = 0; k < exp; ++k) r = r * base;
        return r;
    }
};

}  // namespace detail

/// Parses a polynomial expression over the named variables. Supports +, -, *,
/// ^ with nonnegative integer exponents, rational coefficients written p/q,
/// and the imaginary unit i. Whitespace-insensitive.
inline WPoly parse_wpoly(const std::string& text, const std::vector<std::string>& names) {
    detail::Parser<detail::WPolyTraits> parser(text, detail::WPolyTraits{names});
    return parser.parse();
}

/// Parses a weight expression such as "(3+sqrt(3))/2" or "5/2".
inline QuadExt parse_quadext(const std::string& text) {
    detail::Parser<detail::QuadExtTraits> parser(text, detail::QuadExtTraits{});
    return parser.parse();
}

/// Parses a Gaussian-rational constant such as "1", "-2/3" or "1+i".
inline GaussianRational parse_gaussian(const std::string& text) {
    WPoly p = parse_wpoly(text, {});
    if (p.is_zero()) return GaussianRational(0);
    return p.terms().begin()->second;
}

}  // namespace cycert
