#pragma once

// S-expression grammar for terms and identities:
//
//   expr   := number | var | '[' var+ ']' | '(' head expr* ')'
//   head   := mul | prec | succ | lprod | rprod | nov | d | dd | + | - | * | =
//   var    := ident primes | ident '^(' n ')' | ident '^(' n ',' m ')'
//   number := p | p/q
//
// '[a b c]' is the right-normed product a·(b·c). ';' starts a comment.

#include "term.hpp"
#include "zinbiel.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prenov {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string token, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg +
                             (token.empty() ? "" : " (at '" + token + "')")),
          line_(line), column_(column), token_(std::move(token))
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& token() const { return token_; }

private:
    int line_;
    int column_;
    std::string token_;
};

namespace sexpr_detail {

struct Token {
    enum Kind { open, close, lbracket, rbracket, atom, end } kind;
    std::string text;
    int line;
    int column;
};

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k = 1) {
        for (std::size_t j = 0; j < k; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            advance();
            continue;
        }
        if (c == ';') {
            while (i < src.size() && src[i] != '\n')
                advance();
            continue;
        }
        int l = line, cc = col;
        if (c == '(' || c == ')' || c == '[' || c == ']') {
            auto kind = c == '(' ? Token::open : c == ')' ? Token::close : c == '[' ? Token::lbracket : Token::rbracket;
            out.push_back({kind, std::string(1, c), l, cc});
            advance();
            continue;
        }
        std::string text;
        while (i < src.size()) {
            char ch = src[i];
            if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == '[' || ch == ']' ||
                ch == ';')
                break;
            if (ch == '^' && i + 1 < src.size() && src[i + 1] == '(') {
                // Derivative index "^(n)" or "^(n,m)" belongs to the atom.
                while (i < src.size() && src[i] != ')') {
                    if (src[i] == '\n')
                        throw ParseError(l, cc, text, "unterminated derivative index");
                    text += src[i];
                    advance();
                }
                if (i == src.size())
                    throw ParseError(l, cc, text, "unterminated derivative index");
                text += ')';
                advance();
                continue;
            }
            if (ch == ',')
                break;
            text += ch;
            advance();
        }
        out.push_back({Token::atom, text, l, cc});
    }
    out.push_back({Token::end, "", line, col});
    return out;
}

inline bool looks_numeric(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

inline std::optional<DiffVar> parse_var(std::string_view s)
{
    std::size_t i = 0;
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return std::nullopt;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
    DiffVar v{std::string(s.substr(0, i))};
    if (i == s.size())
        return v;
    if (s[i] == '\'') {
        while (i < s.size() && s[i] == '\'') {
            ++v.d_order;
            ++i;
        }
        return i == s.size() ? std::optional(v) : std::nullopt;
    }
    if (s[i] != '^' || i + 1 >= s.size() || s[i + 1] != '(' || s.back() != ')')
        return std::nullopt;
    auto inner = s.substr(i + 2, s.size() - i - 3);
    auto read_int = [](std::string_view t) -> std::optional<int> {
        if (t.empty() || t.size() > 6)
            return std::nullopt;
        int r = 0;
        for (char ch : t) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                return std::nullopt;
            r = r * 10 + (ch - '0');
        }
        return r;
    };
    auto comma = inner.find(',');
    auto n = read_int(inner.substr(0, comma));
    if (!n)
        return std::nullopt;
    v.d_order = *n;
    if (comma != std::string_view::npos) {
        auto m = read_int(inner.substr(comma + 1));
        if (!m)
            return std::nullopt;
        v.dd_order = *m;
    }
    return v;
}

using Value = std::variant<Scalar, TermPoly>;

class Parser {
public:
    Parser(std::string_view src, const OpSignature& sig) : toks_(tokenize(src)), sig_(sig) {}

    bool at_end() const { return toks_[pos_].kind == Token::end; }
    const Token& current() const { return toks_[pos_]; }

    TermPoly parse_poly()
    {
        const Token& start = toks_[pos_];
        Value v = parse_value();
        return as_poly(v, start);
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const
    {
        throw ParseError(t.line, t.column, t.text, msg);
    }

    TermPoly as_poly(const Value& v, const Token& at) const
    {
        if (auto* p = std::get_if<TermPoly>(&v))
            return *p;
        if (std::get<Scalar>(v).is_zero())
            return {};
        fail(at, "expected a term, found a bare number");
    }

    Value parse_value()
    {
        const Token& t = toks_[pos_];
        switch (t.kind) {
        case Token::end: fail(t, "unexpected end of input");
        case Token::close:
        case Token::rbracket: fail(t, "unexpected closing bracket");
        case Token::atom: {
            ++pos_;
            if (looks_numeric(t.text)) {
                try {
                    return Scalar::parse(t.text);
                } catch (const std::exception& e) {
                    fail(t, e.what());
                }
            }
            auto v = parse_var(t.text);
            if (!v)
                fail(t, "malformed variable");
            return TermPoly(Term(*v));
        }
        case Token::lbracket: {
            ++pos_;
            if (!sig_.contains(Op::mul))
                fail(t, "bracketed words need operation 'mul', which is not in the signature");
            std::vector<DiffVar> letters;
            while (toks_[pos_].kind == Token::atom) {
                auto v = parse_var(toks_[pos_].text);
                if (!v)
                    fail(toks_[pos_], "malformed variable in word");
                letters.push_back(*v);
                ++pos_;
            }
            if (toks_[pos_].kind != Token::rbracket)
                fail(toks_[pos_], "expected ']'");
            if (letters.empty())
                fail(toks_[pos_], "empty word");
            ++pos_;
            Term w(letters.back());
            for (auto it = letters.rbegin() + 1; it != letters.rend(); ++it)
                w = mul(Term(*it), w);
            return TermPoly(w);
        }
        case Token::open: break;
        }
        ++pos_;
        const Token& head = toks_[pos_];
        if (head.kind != Token::atom)
            fail(head, "expected an operator after '('");
        ++pos_;
        std::vector<std::pair<Value, Token>> args;
        while (toks_[pos_].kind != Token::close) {
            if (toks_[pos_].kind == Token::end)
                fail(toks_[pos_], "missing ')'");
            const Token& at = toks_[pos_];
            args.emplace_back(parse_value(), at);
        }
        ++pos_;
        return apply(head, args);
    }

    Value apply(const Token& head, const std::vector<std::pair<Value, Token>>& args)
    {
        const std::string& h = head.text;
        auto arity = [&](std::size_t n) {
            if (args.size() != n)
                fail(head, "'" + h + "' takes " + std::to_string(n) + " argument(s), got " +
                               std::to_string(args.size()));
        };
        if (auto op = op_from_name(h)) {
            if (!sig_.contains(*op))
                fail(head, "unknown operation '" + h + "' for this signature");
            arity(2);
            return apply_op(*op, as_poly(args[0].first, args[0].second), as_poly(args[1].first, args[1].second));
        }
        if (h == "d" || h == "dd") {
            arity(1);
            return derive(as_poly(args[0].first, args[0].second), h == "dd");
        }
        if (h == "+" || h == "-" || h == "=") {
            if (args.empty())
                fail(head, "'" + h + "' needs arguments");
            if (h == "=")
                arity(2);
            bool all_scalar = true;
            for (const auto& a : args)
                all_scalar = all_scalar && std::holds_alternative<Scalar>(a.first);
            if (all_scalar) {
                Scalar s = std::get<Scalar>(args[0].first);
                if (h != "+" && args.size() == 1)
                    return -s;
                for (std::size_t i = 1; i < args.size(); ++i)
                    s = h == "+" ? s + std::get<Scalar>(args[i].first) : s - std::get<Scalar>(args[i].first);
                return s;
            }
            TermPoly p = as_poly(args[0].first, args[0].second);
            if (h == "-" && args.size() == 1)
                return -p;
            for (std::size_t i = 1; i < args.size(); ++i) {
                TermPoly q = as_poly(args[i].first, args[i].second);
                if (h == "+")
                    p += q;
                else
                    p -= q;
            }
            return p;
        }
        if (h == "*") {
            if (args.empty())
                fail(head, "'*' needs arguments");
            Scalar c(1);
            std::optional<TermPoly> p;
            for (const auto& [v, at] : args) {
                if (auto* s = std::get_if<Scalar>(&v)) {
                    c *= *s;
                } else {
                    if (p)
                        fail(at, "'*' multiplies a term by numbers only");
                    p = std::get<TermPoly>(v);
                }
            }
            if (!p)
                return c;
            return c * *p;
        }
        fail(head, "unknown operator '" + h + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const OpSignature& sig_;
};

} // namespace sexpr_detail

/// Parses one expression into a combination of terms over `sig`.
inline TermPoly parse_term(std::string_view src, const OpSignature& sig)
{
    sexpr_detail::Parser p(src, sig);
    if (p.at_end())
        throw ParseError(1, 1, "", "empty input");
    TermPoly out = p.parse_poly();
    if (!p.at_end()) {
        const auto& t = p.current();
        throw ParseError(t.line, t.column, t.text, "trailing input after expression");
    }
    return out;
}

/// Parses zero or more top-level expressions; "(= l r)" becomes l - r.
inline std::vector<TermPoly> parse_identities(std::string_view src, const OpSignature& sig)
{
    sexpr_detail::Parser p(src, sig);
    std::vector<TermPoly> out;
    while (!p.at_end())
        out.push_back(p.parse_poly());
    return out;
}

/// Parses a single differential letter such as "b''" or "x^(1,2)".
inline DiffVar parse_letter(std::string_view s)
{
    auto v = sexpr_detail::parse_var(s);
    if (!v)
        throw ParseError(1, 1, std::string(s), "malformed variable");
    return *v;
}

/// Parses a ZWord written as "[a b' b'']".
inline ZWord parse_zword(std::string_view s)
{
    auto first = s.find_first_not_of(" \t\n");
    auto last = s.find_last_not_of(" \t\n");
    if (first == std::string_view::npos || s[first] != '[' || s[last] != ']')
        throw ParseError(1, 1, std::string(s), "expected a bracketed word");
    std::vector<DiffVar> letters;
    std::string_view body = s.substr(first + 1, last - first - 1);
    std::size_t i = 0;
    while (i < body.size()) {
        if (std::isspace(static_cast<unsigned char>(body[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j])))
            ++j;
        letters.push_back(parse_letter(body.substr(i, j - i)));
        i = j;
    }
    if (letters.empty())
        throw ParseError(1, static_cast<int>(first + 1), std::string(s), "empty word");
    return ZWord(std::move(letters));
}

/// Parses a combination of ZWords such as "3 [a b' b'] - 1/2 [b a'] + [a]".
/// This is the inverse of ZPoly::str with ZWord::str.
inline ZPoly parse_zpoly(std::string_view s)
{
    ZPoly out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    };
    skip();
    if (s.substr(i) == "0")
        return out;
    bool first = true;
    while (i < s.size()) {
        Scalar sign(1);
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-')
                sign = Scalar(-1);
            ++i;
            skip();
        } else if (!first) {
            throw ParseError(1, static_cast<int>(i + 1), std::string(1, s[i]), "expected '+' or '-'");
        }
        Scalar coeff(1);
        if (i < s.size() && s[i] != '[') {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '[')
                ++j;
            coeff = Scalar::parse(s.substr(i, j - i));
            i = j;
            skip();
        }
        auto close = s.find(']', i);
        if (i >= s.size() || s[i] != '[' || close == std::string_view::npos)
            throw ParseError(1, static_cast<int>(i + 1), std::string(s.substr(i)), "expected a bracketed word");
        out.add(parse_zword(s.substr(i, close - i + 1)), sign * coeff);
        i = close + 1;
        skip();
        first = false;
    }
    return out;
}

} // namespace prenov
