#ifndef HA2KIT_PARSE_HPP
#define HA2KIT_PARSE_HPP

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ha2kit/poly.hpp"

namespace ha2kit {

struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

// Recursive-descent parser for the expression grammar
//
//   expr     := ['-'] term { ('+' | '-') term }
//   term     := factor { '*' factor }
//   factor   := atom [ '^' integer ]
//   atom     := literal | variable | '(' expr ')'
//   literal  := integer [ '/' integer ]
//   variable := [A-Za-z][A-Za-z0-9_]*
//
// Whitespace is insignificant. '/' occurs only inside rational literals.
class ExprParser {
  public:
    ExprParser(std::string src, const std::vector<std::string>& universe) : src_(std::move(src)) {
        for (size_t i = 0; i < universe.size(); ++i) index_[universe[i]] = i;
        nvars_ = universe.size();
    }

    Poly parse() {
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return p;
    }

  private:
    Poly parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        Poly acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Poly t = parse_term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= parse_factor();
            } else {
                return acc;
            }
        }
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t at = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw SyntaxError("expected exponent", at);
            long long e = 0;
            for (char ch : digits) {
                e = e * 10 + (ch - '0');
                if (e > 1000000) throw SyntaxError("exponent too large", at);
            }
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    Poly parse_atom() {
        skip_ws();
        char c = peek();
        size_t at = pos_;
        if (c == '(') {
            ++pos_;
            Poly p = parse_expr();
            skip_ws();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                size_t dat = pos_;
                std::string den = read_digits();
                if (den.empty()) throw SyntaxError("expected denominator", dat);
                Rational q(BigInt::from_string(num), BigInt::from_string(den));
                return Poly::constant(nvars_, q);
            }
            return Poly::constant(nvars_, Rational(BigInt::from_string(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < src_.size()) {
                char ch = src_[pos_];
                if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                    name.push_back(ch);
                    ++pos_;
                } else {
                    break;
                }
            }
            auto it = index_.find(name);
            if (it == index_.end()) throw UnknownVariable(name, at);
            return Poly::variable(nvars_, it->second);
        }
        if (c == '\0') throw SyntaxError("unexpected end of input", pos_);
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) out.push_back(src_[pos_++]);
        return out;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    std::string src_;
    size_t pos_ = 0;
    size_t nvars_;
    std::map<std::string, size_t> index_;
};

inline Poly poly_parse(const std::string& expr, const std::vector<std::string>& universe) {
    return ExprParser(expr, universe).parse();
}

inline std::string poly_print(const Poly& p, const std::vector<std::string>& universe) {
    return p.to_string(universe);
}

}  // namespace ha2kit

#endif
