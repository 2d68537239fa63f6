#include "hkd/expr.hpp"

#include <cctype>

namespace hkd {

ExprError::ExprError(const std::string& msg, std::size_t pos)
    : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' integer)?
// atom   := integer | name | '(' expr ')'
class Parser {
public:
    Parser(const std::string& s, const std::map<std::string, Rational>& params, const std::string& var)
        : s_(s), params_(params), var_(var) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (i_ != s_.size()) throw ExprError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return p;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial p = term();
        while (true) {
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else return p;
        }
    }

    Polynomial term() {
        Polynomial p = unary();
        while (true) {
            if (eat('*')) {
                p = p * unary();
            } else if (eat('/')) {
                std::size_t at = i_;
                Polynomial d = unary();
                if (d.degree() > 0) throw ExprError("division by a non-constant", at);
                if (d.is_zero()) throw ExprError("division by zero", at);
                p *= Rational(1) / d.coeff(0);
            } else {
                return p;
            }
        }
    }

    Polynomial unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (!eat('^')) return base;
        skip();
        std::size_t at = i_;
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) throw ExprError("expected an integer exponent", at);
        int e = std::stoi(s_.substr(start, i_ - start));
        Polynomial r = Polynomial::constant(Rational(1));
        for (int k = 0; k < e; ++k) r = r * base;
        return r;
    }

    Polynomial atom() {
        skip();
        if (i_ >= s_.size()) throw ExprError("unexpected end of expression", i_);
        std::size_t at = i_;
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Polynomial p = expr();
            if (!eat(')')) throw ExprError("expected ')'", i_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return Polynomial::constant(Rational(Integer(s_.substr(at, i_ - at))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name = s_.substr(at, i_ - at);
            if (name == var_) return Polynomial::monomial(Rational(1), 1);
            auto it = params_.find(name);
            if (it == params_.end()) throw ExprError("unknown name '" + name + "'", at);
            return Polynomial::constant(it->second);
        }
        throw ExprError("unexpected '" + std::string(1, c) + "'", at);
    }

    const std::string& s_;
    const std::map<std::string, Rational>& params_;
    const std::string& var_;
    std::size_t i_ = 0;
};

}  // namespace

Polynomial parse_expr(const std::string& text, const std::map<std::string, Rational>& params,
                      const std::string& var) {
    return Parser(text, params, var).run();
}

Rational parse_constant(const std::string& text, const std::map<std::string, Rational>& params) {
    // an identifier that can never be written
    Polynomial p = Parser(text, params, std::string("\x01")).run();
    return p.coeff(0);
}

}  // namespace hkd
