#pragma once

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "kcharge/dsl/diagnostic.hpp"

namespace kcharge::dsl {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Assign,
    EqEq,
    Arrow,
    Star,
    Plus,
    Minus,
    Dot,
    OPlus,  // (+)
    OTimes, // (x)
    End,
};

struct Token {
    Tok kind;
    std::string text;
    Pos pos;
};

inline std::string describe(const Token& t)
{
    switch (t.kind) {
    case Tok::End:
        return "end of input";
    case Tok::Ident:
        return "'" + t.text + "'";
    case Tok::Int:
        return "integer " + t.text;
    default:
        return "'" + t.text + "'";
    }
}

/// Splits a script into tokens. `#` starts a comment that runs to the end
/// of the line. `(+)` and `(x)` are single tokens when written without
/// inner spaces.
inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    Pos pos;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
    };
    auto emit = [&](Tok kind, std::size_t len) {
        out.push_back({kind, std::string(src.substr(i, len)), pos});
        advance(len);
    };
    while (i < src.size()) {
        const char ch = src[i];
        const auto uc = static_cast<unsigned char>(ch);
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            advance(1);
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        if (std::isalpha(uc) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            emit(Tok::Ident, j - i);
            continue;
        }
        if (std::isdigit(uc)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
            emit(Tok::Int, j - i);
            continue;
        }
        const std::string_view rest = src.substr(i);
        if (rest.starts_with("(+)")) {
            emit(Tok::OPlus, 3);
        } else if (rest.starts_with("(x)")) {
            emit(Tok::OTimes, 3);
        } else if (rest.starts_with("==")) {
            emit(Tok::EqEq, 2);
        } else if (rest.starts_with("->")) {
            emit(Tok::Arrow, 2);
        } else {
            Tok kind;
            switch (ch) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case ';': kind = Tok::Semi; break;
            case ':': kind = Tok::Colon; break;
            case '=': kind = Tok::Assign; break;
            case '*': kind = Tok::Star; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '.': kind = Tok::Dot; break;
            default: {
                std::string shown;
                if (uc >= 0x20 && uc < 0x7f) {
                    shown = std::string("'") + ch + "'";
                } else {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "0x%02X", static_cast<unsigned>(uc));
                    shown = std::string("byte ") + buf;
                }
                throw make_error(src, pos, "unexpected character " + shown);
            }
            }
            emit(kind, 1);
        }
    }
    out.push_back({Tok::End, "", pos});
    return out;
}

} // namespace kcharge::dsl
