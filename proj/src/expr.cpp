#include "tjurina/expr.hpp"

#include <cctype>

#include "tjurina/errors.hpp"

namespace tjurina {
namespace {

struct Token {
    enum Kind { Num, Var, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) bump();
        tok_.line = line_;
        tok_.col = col_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            // a rational literal is two integer runs glued by '/'
            if (i_ < s_.size() && s_[i_] == '/') {
                bump();
                if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
                    throw syntax_error("expected digits after '/'", line_, col_);
                num += "/" + read_digits();
            }
            tok_.kind = Token::Num;
            tok_.text = num;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
                id += s_[i_];
                bump();
            }
            tok_.kind = Token::Var;
            tok_.text = id;
            return;
        }
        bump();
        switch (c) {
            case '+': tok_.kind = Token::Plus; return;
            case '-': tok_.kind = Token::Minus; return;
            case '*': tok_.kind = Token::Star; return;
            case '^': tok_.kind = Token::Caret; return;
            case '(': tok_.kind = Token::LParen; return;
            case ')': tok_.kind = Token::RParen; return;
            default:
                throw syntax_error(std::string("unexpected character '") + c + "'", tok_.line,
                                   tok_.col);
        }
    }

    std::string read_digits() {
        std::string d;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            d += s_[i_];
            bump();
        }
        return d;
    }

    void bump() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    const std::string& s_;
    size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : lex_(text), vars_(vars) {}

    MPoly run() {
        MPoly p = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw syntax_error("unexpected trailing input", t.line, t.col);
        return p;
    }

private:
    int n() const { return static_cast<int>(vars_.size()); }

    MPoly expr() {
        MPoly acc = lex_.peek().kind == Token::Minus ? MPoly(n()) : term();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Plus) {
                lex_.take();
                acc += term();
            } else if (k == Token::Minus) {
                lex_.take();
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MPoly term() {
        MPoly acc = factor();
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            acc *= factor();
        }
        return acc;
    }

    MPoly factor() {
        MPoly base = atom();
        if (lex_.peek().kind == Token::Caret) {
            Token caret = lex_.take();
            Token e = lex_.take();
            if (e.kind != Token::Num || e.text.find('/') != std::string::npos)
                throw syntax_error("exponent must be a nonnegative integer", caret.line,
                                   caret.col);
            return base.pow(std::stoul(e.text));
        }
        return base;
    }

    MPoly atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Num:
                return MPoly::constant(n(), rat_parse(t.text));
            case Token::Var: {
                for (int i = 0; i < n(); ++i)
                    if (vars_[i] == t.text) return MPoly::variable(n(), i);
                throw unknown_variable("unknown variable '" + t.text + "' at line " +
                                       std::to_string(t.line) + ", col " + std::to_string(t.col));
            }
            case Token::LParen: {
                MPoly p = expr();
                Token close = lex_.take();
                if (close.kind != Token::RParen)
                    throw syntax_error("expected ')'", close.line, close.col);
                return p;
            }
            case Token::Minus:
                return -factor();
            default:
                throw syntax_error("expected a number, variable or '('", t.line, t.col);
        }
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
};

}  // namespace

MPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

Series parse_series(const std::string& text) {
    MPoly p = parse_polynomial(text, {"t"});
    Series s;
    for (const auto& [e, c] : p.terms()) s.set_coeff(e[0], c);
    return s;
}

}  // namespace tjurina
