#include "germ/parse.hpp"

#include <cctype>

#include "germ/errors.hpp"

namespace germ::poly {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarNames& vars) : text_(text), vars_(vars) {}

    MPoly run() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        MPoly p = expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
        return p;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly expr() {
        MPoly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MPoly term() {
        MPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                skip_space();
                const std::size_t at = pos_;
                MPoly d = unary();
                if (!d.is_constant()) throw ParseError("division by a non-constant", at);
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc *= d.constant_term().inverse();
            } else {
                return acc;
            }
        }
    }

    MPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MPoly power() {
        MPoly base = atom();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("exponent must be a non-negative integer literal", at);
            const Integer e = integer();
            if (!e.fits_uint_p() || e > 10000) throw ParseError("exponent too large", at);
            base = base.pow(static_cast<unsigned>(e.get_ui()));
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '^')
                throw ParseError("chained exponents need parentheses", pos_);
        }
        return base;
    }

    Integer integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)), 10);
    }

    MPoly atom() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            MPoly p(vars_);
            p.add_term({0, 0, 0}, Rational(integer()));
            return p;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < kNumVars; ++i)
                if (!vars_[i].empty() && vars_[i] == name)
                    return MPoly::variable(static_cast<Var>(i), vars_);
            throw UnknownIdentifierError(name, start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view text_;
    const VarNames& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text, const VarNames& vars) {
    MPoly p = Parser(text, vars).run();
    p.set_names(vars);
    return p;
}

}  // namespace germ::poly
