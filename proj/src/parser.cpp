#include <cctype>
#include <string>

#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"

namespace lienil {

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (['*'] factor)*
// factor := atom ['^' integer]
// atom   := 'x' integer | number | '[' expr (',' expr)+ ']' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NcPoly parse() {
        NcPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial literal: " + msg + " at position " + std::to_string(pos_) + " in '" +
                         std::string(s_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == 'x' || c == '[' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }

    NcPoly expr() {
        NcPoly acc;
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        NcPoly t = term();
        acc = neg ? -t : t;
        while (true) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    NcPoly term() {
        NcPoly acc = factor();
        while (true) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (starts_atom()) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    NcPoly factor() {
        NcPoly a = atom();
        if (accept('^')) {
            std::string d = digits();
            if (d.size() > 3) fail("exponent too large");
            a = power(a, std::stoi(d));
        }
        return a;
    }

    NcPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == 'x') {
            ++pos_;
            std::string d = digits();
            int v = d.size() > 2 ? 1000 : std::stoi(d);
            if (v < 1 || v > kMaxVariables) fail("variable index must be in 1..99");
            return NcPoly::var(v);
        }
        if (c == '[') {
            ++pos_;
            std::vector<NcPoly> args{expr()};
            while (accept(',')) args.push_back(expr());
            expect(']');
            if (args.size() < 2) fail("commutator needs at least two entries");
            return long_commutator(args);
        }
        if (c == '(') {
            ++pos_;
            NcPoly p = expr();
            expect(')');
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (peek('/')) {
                ++pos_;
                num += "/" + digits();
            }
            try {
                return NcPoly::constant(Rational::parse(num));
            } catch (const std::exception&) {
                fail("bad number");
            }
        }
        fail("unexpected character");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

NcPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace lienil
