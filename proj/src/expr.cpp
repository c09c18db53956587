#include "apalg/expr.hpp"

#include <cctype>
#include <optional>

namespace apalg {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind = End;
    Rat value;        // Number
    bool imag = false;  // Number carries an 'i' suffix
    std::string text;  // Ident
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }
    bool eat(Token::Kind k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }
    void expect(Token::Kind k, const char* what) {
        if (!eat(k)) throw ParseError(std::string("expected ") + what, cur_.pos);
    }

    /// Current token must be '('; returns the slice up to the next ')' and
    /// resumes lexing after it. Frequencies contain no parentheses, so the
    /// first ')' always matches.
    std::string_view take_until_rparen() {
        if (cur_.kind != Token::LParen) throw ParseError("expected '('", cur_.pos);
        std::size_t open = cur_.pos;
        std::size_t close = s_.find(')', open + 1);
        if (close == std::string_view::npos) throw ParseError("unterminated '('", open);
        pos_ = close + 1;
        advance();
        return s_.substr(open + 1, close - open - 1);
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        cur_ = Token{};
        cur_.pos = pos_;
        if (pos_ >= s_.size()) {
            cur_.kind = Token::End;
            return;
        }
        char c = s_[pos_];
        switch (c) {
            case '+': cur_.kind = Token::Plus; ++pos_; return;
            case '-': cur_.kind = Token::Minus; ++pos_; return;
            case '*': cur_.kind = Token::Star; ++pos_; return;
            case '^': cur_.kind = Token::Caret; ++pos_; return;
            case '(': cur_.kind = Token::LParen; ++pos_; return;
            case ')': cur_.kind = Token::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    throw ParseError("malformed rational", pos_);
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            cur_.kind = Token::Number;
            cur_.value = parse_rational(s_.substr(start, pos_ - start));
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                cur_.imag = true;
                ++pos_;
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            cur_.kind = Token::Ident;
            cur_.text = std::string(s_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    Token cur_;
};

long parse_power(Lexer& lx) {
    bool neg = lx.eat(Token::Minus);
    Token t = lx.take();
    if (t.kind != Token::Number || t.imag || denominator(t.value) != 1)
        throw ParseError("expected integer exponent after '^'", t.pos);
    Int v = numerator(t.value);
    if (v > 64) throw ParseError("exponent too large", t.pos);
    long e = v.convert_to<long>();
    return neg ? -e : e;
}

// --- trig polynomial expressions ------------------------------------------------

class ExprParser {
public:
    ExprParser(std::string_view text, TablePtr table, const std::map<std::string, TrigPoly>& named)
        : lx_(text), table_(std::move(table)), named_(named) {}

    TrigPoly parse() {
        TrigPoly p = expr();
        if (lx_.peek().kind != Token::End)
            throw ParseError("trailing input after expression", lx_.peek().pos);
        return p;
    }

private:
    TrigPoly expr() {
        bool neg = lx_.eat(Token::Minus);
        TrigPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (lx_.eat(Token::Plus)) acc = acc + term();
            else if (lx_.eat(Token::Minus)) acc = acc - term();
            else return acc;
        }
    }

    TrigPoly term() {
        TrigPoly acc = factor();
        while (lx_.eat(Token::Star)) acc = acc * factor();
        return acc;
    }

    TrigPoly factor() {
        TrigPoly base = atom();
        if (!lx_.eat(Token::Caret)) return base;
        long e = parse_power(lx_);
        if (e >= 0) return base.pow(static_cast<unsigned>(e));
        // negative powers: invert a monomial exactly
        if (base.term_count() != 1)
            throw ParseError("negative power requires a single-term polynomial", lx_.peek().pos);
        auto& [f, c] = *base.terms().begin();
        TrigPoly inv = TrigPoly::character(table_, f.negated(), c.inverse());
        return inv.pow(static_cast<unsigned>(-e));
    }

    TrigPoly atom() {
        const Token& t = lx_.peek();
        if (t.kind == Token::Number) {
            Token num = lx_.take();
            CRat c = num.imag ? CRat(Rat(0), num.value) : CRat(num.value);
            return TrigPoly::constant(table_, c);
        }
        if (t.kind == Token::LParen) {
            lx_.take();
            TrigPoly p = expr();
            lx_.expect(Token::RParen, "')'");
            return p;
        }
        if (t.kind == Token::Ident) {
            Token id = lx_.take();
            if (id.text == "e" && lx_.peek().kind == Token::LParen) {
                Frequency f = freq_parse(lx_.take_until_rparen(), *table_);
                return TrigPoly::character(table_, f);
            }
            auto it = named_.find(id.text);
            if (it == named_.end()) throw ParseError("unknown name '" + id.text + "'", id.pos);
            return it->second;
        }
        throw ParseError("expected value, e(...), name or '('", t.pos);
    }

    Lexer lx_;
    TablePtr table_;
    const std::map<std::string, TrigPoly>& named_;
};

}  // namespace

TrigPoly parse_expr(std::string_view text, TablePtr table,
                    const std::map<std::string, TrigPoly>& named) {
    if (!table) throw Error("parse_expr requires a generator table");
    return ExprParser(text, std::move(table), named).parse();
}

namespace {

std::string coeff_atom(const CRat& c) { return complex_text(c); }

}  // namespace

std::string render(const TrigPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto& [f, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        out += coeff_atom(c);
        if (!f.is_zero()) out += "*e(" + freq_text(f, *p.table()) + ")";
    }
    return out;
}

// --- Laurent expressions ----------------------------------------------------------

namespace {

class LaurentParser {
public:
    LaurentParser(std::string_view text, int dim) : lx_(text), dim_(dim) {}

    LaurentPoly parse() {
        LaurentPoly q = expr();
        if (lx_.peek().kind != Token::End)
            throw ParseError("trailing input after expression", lx_.peek().pos);
        return q;
    }

private:
    LaurentPoly expr() {
        bool neg = lx_.eat(Token::Minus);
        LaurentPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (lx_.eat(Token::Plus)) acc = acc + term();
            else if (lx_.eat(Token::Minus)) acc = acc - term();
            else return acc;
        }
    }

    LaurentPoly term() {
        LaurentPoly acc = factor();
        while (lx_.eat(Token::Star)) acc = acc * factor();
        return acc;
    }

    LaurentPoly factor() {
        LaurentPoly base = atom();
        if (!lx_.eat(Token::Caret)) return base;
        long e = parse_power(lx_);
        if (e >= 0) {
            LaurentPoly acc = LaurentPoly::constant(dim_, CRat(1));
            for (long i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        if (base.term_count() != 1)
            throw ParseError("negative power requires a single-term polynomial", lx_.peek().pos);
        auto& [k, c] = *base.terms().begin();
        ExponentVec nk(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) nk[i] = -k[i];
        LaurentPoly inv = LaurentPoly::monomial(dim_, std::move(nk), c.inverse());
        LaurentPoly acc = LaurentPoly::constant(dim_, CRat(1));
        for (long i = 0; i < -e; ++i) acc = acc * inv;
        return acc;
    }

    LaurentPoly atom() {
        const Token& t = lx_.peek();
        if (t.kind == Token::Number) {
            Token num = lx_.take();
            CRat c = num.imag ? CRat(Rat(0), num.value) : CRat(num.value);
            return LaurentPoly::constant(dim_, c);
        }
        if (t.kind == Token::LParen) {
            lx_.take();
            LaurentPoly q = expr();
            lx_.expect(Token::RParen, "')'");
            return q;
        }
        if (t.kind == Token::Ident) {
            Token id = lx_.take();
            if (id.text.size() >= 2 && id.text[0] == 'z') {
                long idx = 0;
                bool digits = true;
                for (std::size_t i = 1; i < id.text.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(id.text[i]))) {
                        digits = false;
                        break;
                    }
                    idx = idx * 10 + (id.text[i] - '0');
                }
                if (digits && idx >= 1) {
                    if (idx > dim_)
                        throw ParseError("variable z" + std::to_string(idx) + " exceeds dimension " +
                                             std::to_string(dim_),
                                         id.pos);
                    ExponentVec k(dim_, 0);
                    k[idx - 1] = 1;
                    return LaurentPoly::monomial(dim_, std::move(k));
                }
            }
            throw ParseError("unknown variable '" + id.text + "'", id.pos);
        }
        throw ParseError("expected value, variable or '('", t.pos);
    }

    Lexer lx_;
    int dim_;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, int dim) {
    return LaurentParser(text, dim).parse();
}

std::string render_laurent(const LaurentPoly& q) {
    if (q.is_zero()) return "0";
    std::string out;
    for (auto& [k, c] : q.terms()) {
        if (!out.empty()) out += " + ";
        out += coeff_atom(c);
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            out += "*z" + std::to_string(i + 1);
            if (k[i] != 1) out += "^" + std::to_string(k[i]);
        }
    }
    return out;
}

}  // namespace apalg
