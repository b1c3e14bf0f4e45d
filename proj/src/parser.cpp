#include "mpqed/parser.hpp"

#include <algorithm>
#include <cctype>

#include "mpqed/error.hpp"

namespace mpqed {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind = End;
    std::string text;
    char punct = 0;
    int line = 1, col = 1;
};

class Lexer {
  public:
    Lexer(const std::string& text, int first_line) : text_(text), line_(first_line) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                s += text_[pos_++];
                ++col_;
            }
            tok_.kind = Token::Ident;
            tok_.text = std::move(s);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                s += text_[pos_++];
                ++col_;
            }
            tok_.kind = Token::Number;
            tok_.text = std::move(s);
        } else {
            tok_.kind = Token::Punct;
            tok_.punct = c;
            ++pos_;
            ++col_;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_;
    int col_ = 1;
    Token tok_;
};

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

struct Value {
    enum class Type { Scalar, Vector, Operator } type = Type::Scalar;
    ScalarExpr s;
    VecExpr v;
    OpExpr o;

    static Value scalar(ScalarExpr x) {
        Value out;
        out.type = Type::Scalar;
        out.s = std::move(x);
        return out;
    }
    static Value vector(VecExpr x) {
        Value out;
        out.type = Type::Vector;
        out.v = std::move(x);
        return out;
    }
    static Value op(OpExpr x) {
        Value out;
        out.type = Type::Operator;
        out.o = std::move(x);
        return out;
    }
};

ScalarExpr scalar_inverse(const ScalarExpr& s, const Token& at) {
    if (s.is_zero()) throw ParseError("division by zero", at.line, at.col);
    if (!s.single_grade()) throw ParseError("cannot divide by a mixed-grade scalar", at.line, at.col);
    int g = s.parts().begin()->first;
    return ScalarExpr::graded(-g, s.parts().begin()->second.inverse());
}

class Parser {
  public:
    Parser(const std::string& text, const ParserContext& ctx, int first_line)
        : lex_(text, first_line), ctx_(ctx) {}

    Value parse_full() {
        Value v = parse_expr();
        expect_end();
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string& msg, const Token& t) {
        throw ParseError(msg, t.line, t.col);
    }

    void expect_end() {
        if (lex_.peek().kind != Token::End) fail("unexpected trailing input", lex_.peek());
    }

    bool at_punct(char c) const {
        return lex_.peek().kind == Token::Punct && lex_.peek().punct == c;
    }

    Token expect_punct(char c) {
        if (!at_punct(c)) fail(std::string("expected '") + c + "'", lex_.peek());
        return lex_.next();
    }

    Value parse_expr() {
        Value acc = parse_term();
        while (at_punct('+') || at_punct('-')) {
            Token op = lex_.next();
            Value rhs = parse_term();
            bool minus = op.punct == '-';
            acc = combine_add(std::move(acc), std::move(rhs), minus, op);
        }
        return acc;
    }

    Value combine_add(Value a, Value b, bool minus, const Token& at) {
        // promote scalars to operators when summed with operators
        auto promote = [&](Value& x) {
            if (x.type == Value::Type::Scalar) x = Value::op(op_scalar(x.s, ctx_.reg));
        };
        if (a.type == Value::Type::Vector || b.type == Value::Type::Vector) {
            if (a.type != b.type) fail("cannot add vector and non-vector values", at);
            return Value::vector(minus ? a.v - b.v : a.v + b.v);
        }
        if (a.type == Value::Type::Operator || b.type == Value::Type::Operator) {
            promote(a);
            promote(b);
            OpExpr rhs = minus ? negate(b.o) : b.o;
            // keep raw terms; canonicalization happens at the end
            OpExpr out = a.o;
            out.terms.insert(out.terms.end(), rhs.terms.begin(), rhs.terms.end());
            return Value::op(std::move(out));
        }
        return Value::scalar(minus ? a.s - b.s : a.s + b.s);
    }

    Value parse_term() {
        Token start = lex_.peek();
        Value acc = parse_power();
        while (at_punct('*') || at_punct('/')) {
            Token op = lex_.next();
            Value rhs = parse_power();
            if (op.punct == '/') {
                if (rhs.type != Value::Type::Scalar) fail("can only divide by scalars", op);
                rhs.s = scalar_inverse(rhs.s, op);
                op.punct = '*';
            }
            acc = combine_mul(std::move(acc), std::move(rhs), op);
        }
        return acc;
    }

    Value combine_mul(Value a, Value b, const Token& at) {
        using T = Value::Type;
        if (a.type == T::Scalar && b.type == T::Scalar) return Value::scalar(a.s * b.s);
        if (a.type == T::Scalar && b.type == T::Vector) return Value::vector(b.v.scaled(a.s));
        if (a.type == T::Vector && b.type == T::Scalar) return Value::vector(a.v.scaled(b.s));
        if (a.type == T::Scalar && b.type == T::Operator) return Value::op(scale(b.o, a.s));
        if (a.type == T::Operator && b.type == T::Scalar) return Value::op(scale(a.o, b.s));
        if (a.type == T::Operator && b.type == T::Operator) return Value::op(multiply(a.o, b.o));
        fail("cannot multiply vector values; use dot(...) or cross(...)", at);
    }

    Value parse_power() {
        Value base = parse_unary();
        // '^' after a vector is left for the caller (derivative multiplicity)
        if (at_punct('^') && base.type == Value::Type::Scalar) {
            Token op = lex_.next();
            int n = parse_int();
            ScalarExpr out(1);
            ScalarExpr b = n < 0 ? scalar_inverse(base.s, op) : base.s;
            for (int i = 0; i < std::abs(n); ++i) out = out * b;
            return Value::scalar(std::move(out));
        }
        return base;
    }

    int parse_int() {
        bool neg = false;
        if (at_punct('-')) {
            lex_.next();
            neg = true;
        }
        if (lex_.peek().kind != Token::Number) fail("expected an integer", lex_.peek());
        Token t = lex_.next();
        int v = std::stoi(t.text);
        return neg ? -v : v;
    }

    Value parse_unary() {
        int sign = 1;
        while (at_punct('+') || at_punct('-')) {
            if (lex_.next().punct == '-') sign = -sign;
        }
        Value v = parse_primary();
        if (sign < 0) {
            switch (v.type) {
                case Value::Type::Scalar: v.s = -v.s; break;
                case Value::Type::Vector: v.v = -v.v; break;
                case Value::Type::Operator: v.o = negate(v.o); break;
            }
        }
        return v;
    }

    VecExpr parse_vec_arg() {
        Token at = lex_.peek();
        Value v = parse_expr();
        if (v.type == Value::Type::Vector) return v.v;
        fail("expected a vector-valued expression", at);
    }

    ScalarExpr parse_scalar_arg() {
        Token at = lex_.peek();
        Value v = parse_expr();
        if (v.type == Value::Type::Scalar) return v.s;
        fail("expected a scalar-valued expression", at);
    }

    Value parse_primary() {
        Token t = lex_.peek();
        if (t.kind == Token::Number) {
            lex_.next();
            return Value::scalar(ScalarExpr(RatFunc(Rat(Int(t.text)))));
        }
        if (at_punct('(')) {
            lex_.next();
            Value v = parse_expr();
            expect_punct(')');
            return v;
        }
        if (t.kind != Token::Ident) fail("expected an expression", t);
        lex_.next();
        const std::string& name = t.text;

        if (name == "mu") return Value::scalar(ScalarExpr::graded(1, RatFunc(Rat(1))));
        if (name == "dot" || name == "cross") {
            expect_punct('(');
            VecExpr a = parse_vec_arg();
            expect_punct(',');
            VecExpr b = parse_vec_arg();
            expect_punct(')');
            if (name == "dot") return Value::op(dot(a, b, ctx_.reg));
            return Value::vector(cross(a, b));
        }
        if (name == "invnorm") {
            expect_punct('(');
            VecExpr a = parse_vec_arg();
            expect_punct(')');
            return Value::op(op_term(ScalarExpr(1), {OpFactor::inverse_norm(std::move(a))}, false, ctx_.reg));
        }
        if (name == "hc") {
            expect_punct('(');
            Token at = lex_.peek();
            Value v = parse_expr();
            expect_punct(')');
            if (v.type != Value::Type::Operator) fail("hc(...) needs an operator expression", at);
            for (auto& term : v.o.terms) {
                if (term.hermitian) fail("nested hc(...) marker", at);
                if (term.factors.empty()) fail("hc(...) marker on a pure scalar term", at);
                term.hermitian = true;
            }
            return v;
        }
        if (name == "sqrt") {
            expect_punct('(');
            Token at = lex_.peek();
            ScalarExpr a = parse_scalar_arg();
            expect_punct(')');
            if (a.is_zero()) return Value::scalar(ScalarExpr(0));
            if (!a.single_grade() || a.parts().begin()->first != 0)
                fail("sqrt of a mu-graded scalar", at);
            const RatFunc& f = a.parts().begin()->second;
            std::optional<RatFunc> root;
            if (f.is_rational()) {
                root = f.sqrt(sym::e);  // sign rule unused for pure rationals
            } else {
                if (!ctx_.dominant)
                    fail("sqrt of a symbolic expression requires a dominant mass declaration", at);
                root = f.sqrt(*ctx_.dominant);
            }
            if (!root) fail("not an exact square", at);
            return Value::scalar(ScalarExpr(*root));
        }
        if (name == "Hf" || name == "Pself")
            return Value::op(op_term(ScalarExpr(1), {OpFactor::named(name)}, false, ctx_.reg));

        // vector atoms: r/p (lab), R/P (jacobi), S spins, Mag moments
        if (auto atom = try_vector_atom(name)) return Value::vector(VecExpr(*atom));

        // field atoms
        if ((name == "E" || name == "B" || name == "A" || name == "Pi") && at_punct('(')) {
            FieldKind kind = name == "E"    ? FieldKind::E
                             : name == "B"  ? FieldKind::B
                             : name == "A"  ? FieldKind::A
                                            : FieldKind::Pi;
            lex_.next();
            VecExpr point = parse_vec_arg();
            std::vector<FieldAtom::Dir> dirs;
            if (at_punct(';')) {
                lex_.next();
                while (true) {
                    VecExpr d = parse_vec_arg();
                    int mult = 1;
                    if (at_punct('^')) {
                        lex_.next();
                        mult = parse_int();
                        if (mult < 1) fail("derivative multiplicity must be positive", t);
                    }
                    dirs.push_back({std::move(d), mult});
                    if (!at_punct(',')) break;
                    lex_.next();
                }
            }
            expect_punct(')');
            return Value::vector(make_field(kind, std::move(point), std::move(dirs)));
        }

        // registered scalar symbol or named definition
        if (ctx_.reg) {
            if (auto id = ctx_.reg->lookup(name)) return Value::scalar(ScalarExpr::var(*id));
        }
        auto def = ctx_.defs.find(name);
        if (def != ctx_.defs.end()) return Value::scalar(def->second);

        fail("unknown symbol '" + name + "'" + suggestions(name), t);
    }

    std::optional<VecAtom> try_vector_atom(const std::string& name) {
        std::size_t i = 0;
        std::string prefix;
        while (i < name.size() && !std::isdigit(static_cast<unsigned char>(name[i]))) prefix += name[i++];
        if (i == name.size() || i == 0) return std::nullopt;
        for (std::size_t j = i; j < name.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(name[j]))) return std::nullopt;
        int index = std::stoi(name.substr(i));
        if (index < 1) return std::nullopt;
        if (prefix == "r") return VecAtom::position(index, Frame::Lab);
        if (prefix == "R") return VecAtom::position(index, Frame::Jacobi);
        if (prefix == "p") return VecAtom::momentum(index, Frame::Lab);
        if (prefix == "P") return VecAtom::momentum(index, Frame::Jacobi);
        if (prefix == "S") return VecAtom::spin(index);
        if (prefix == "Mag") return VecAtom::moment(index);
        return std::nullopt;
    }

    std::string suggestions(const std::string& name) {
        std::vector<std::string> known;
        if (ctx_.reg)
            for (SymbolId i = 0; i < ctx_.reg->size(); ++i) known.push_back(ctx_.reg->name(i));
        for (auto& [n, d] : ctx_.defs) known.push_back(n);
        std::vector<std::string> close;
        for (auto& k : known)
            if (edit_distance(name, k) <= 2) close.push_back(k);
        if (close.empty()) return "";
        std::sort(close.begin(), close.end());
        std::string out = " (did you mean: ";
        for (std::size_t i = 0; i < close.size(); ++i) {
            if (i) out += ", ";
            out += close[i];
        }
        return out + "?)";
    }

    Lexer lex_;
    const ParserContext& ctx_;
};

}  // namespace

ScalarExpr parse_scalar(const std::string& text, const ParserContext& ctx, int first_line) {
    Parser p(text, ctx, first_line);
    Value v = p.parse_full();
    if (v.type != Value::Type::Scalar)
        throw ParseError("expected a scalar expression", first_line, 1);
    return v.s;
}

VecExpr parse_vec(const std::string& text, const ParserContext& ctx, int first_line) {
    Parser p(text, ctx, first_line);
    Value v = p.parse_full();
    if (v.type != Value::Type::Vector)
        throw ParseError("expected a vector expression", first_line, 1);
    return canonicalize(v.v);
}

OpExpr parse_op(const std::string& text, const ParserContext& ctx, int first_line) {
    Parser p(text, ctx, first_line);
    Value v = p.parse_full();
    if (v.type == Value::Type::Scalar) return canonicalize(op_scalar(v.s, ctx.reg));
    if (v.type != Value::Type::Operator)
        throw ParseError("expected an operator expression", first_line, 1);
    v.o.reg = ctx.reg;
    return canonicalize(v.o);
}

}  // namespace mpqed
