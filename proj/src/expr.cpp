#include "pim/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <vector>

namespace pim {

// ---------------------------------------------------------------- factories

ExprPtr ExprNode::number(double v) {
    auto n = std::shared_ptr<ExprNode>(new ExprNode(Kind::Number));
    n->value_ = v;
    return n;
}

ExprPtr ExprNode::var() {
    return std::shared_ptr<ExprNode>(new ExprNode(Kind::Var));
}

ExprPtr ExprNode::param(std::string name) {
    auto n = std::shared_ptr<ExprNode>(new ExprNode(Kind::Param));
    n->name_ = std::move(name);
    return n;
}

ExprPtr ExprNode::unary(UnaryOp op, ExprPtr child) {
    auto n = std::shared_ptr<ExprNode>(new ExprNode(Kind::Unary));
    n->uop_ = op;
    n->lhs_ = std::move(child);
    return n;
}

ExprPtr ExprNode::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto n = std::shared_ptr<ExprNode>(new ExprNode(Kind::Binary));
    n->bop_ = op;
    n->lhs_ = std::move(lhs);
    n->rhs_ = std::move(rhs);
    return n;
}

// ------------------------------------------------------------------- lexer

namespace {

enum class Tok { Number, Ident, Var, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok type;
    std::size_t offset;   // byte offset of the first byte
    double number = 0.0;
    std::string text;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Number: return "number";
        case Tok::Ident:  return "identifier";
        case Tok::Var:    return "'z'";
        case Tok::Plus:   return "'+'";
        case Tok::Minus:  return "'-'";
        case Tok::Star:   return "'*'";
        case Tok::Slash:  return "'/'";
        case Tok::Caret:  return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End:    return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    Token cur_;

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        cur_.offset = pos_;
        cur_.text.clear();
        if (pos_ >= src_.size()) {
            cur_.type = Tok::End;
            return;
        }
        char c = src_[pos_];
        // U+2212 (minus sign) -> '-'
        if (static_cast<unsigned char>(c) == 0xE2 && pos_ + 2 < src_.size() &&
            static_cast<unsigned char>(src_[pos_ + 1]) == 0x88 &&
            static_cast<unsigned char>(src_[pos_ + 2]) == 0x92) {
            cur_.type = Tok::Minus;
            pos_ += 3;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            cur_.text = src_.substr(start, pos_ - start);
            cur_.type = (cur_.text == "z") ? Tok::Var : Tok::Ident;
            return;
        }
        switch (c) {
            case '+': cur_.type = Tok::Plus; break;
            case '-': cur_.type = Tok::Minus; break;
            case '*': cur_.type = Tok::Star; break;
            case '/': cur_.type = Tok::Slash; break;
            case '^': cur_.type = Tok::Caret; break;
            case '(': cur_.type = Tok::LParen; break;
            case ')': cur_.type = Tok::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
        ++pos_;
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        // exponent only if it is actually followed by digits
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                ++p;
                while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p])))
                    ++p;
                pos_ = p;
            }
        }
        cur_.text = src_.substr(start, pos_ - start);
        if (cur_.text == ".")
            throw ParseError("malformed number", start);
        cur_.number = std::strtod(cur_.text.c_str(), nullptr);
        cur_.type = Tok::Number;
    }
};

// ------------------------------------------------------------------ parser

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    ExprPtr run() {
        ExprPtr e = expr();
        if (lex_.peek().type != Tok::End)
            throw ParseError(std::string("unexpected ") + tok_name(lex_.peek().type),
                             lex_.peek().offset, {"'+'", "'-'", "'*'", "'/'", "end of input"});
        return e;
    }

private:
    Lexer lex_;

    [[noreturn]] void fail(const char* what, std::vector<std::string> expected) {
        throw ParseError(std::string("syntax error: expected ") + what + ", got " +
                             tok_name(lex_.peek().type),
                         lex_.peek().offset, std::move(expected));
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (lex_.peek().type == Tok::Plus || lex_.peek().type == Tok::Minus) {
            Tok op = lex_.take().type;
            ExprPtr r = term();
            e = ExprNode::binary(op == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub, e, r);
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (lex_.peek().type == Tok::Star || lex_.peek().type == Tok::Slash) {
            Tok op = lex_.take().type;
            ExprPtr r = factor();
            e = ExprNode::binary(op == Tok::Star ? BinaryOp::Mul : BinaryOp::Div, e, r);
        }
        return e;
    }

    // '^' binds tighter than unary minus: -z^2 is -(z^2).
    ExprPtr factor() {
        if (lex_.peek().type == Tok::Minus) {
            lex_.take();
            return ExprNode::unary(UnaryOp::Neg, factor());
        }
        ExprPtr b = base();
        if (lex_.peek().type == Tok::Caret) {
            lex_.take();
            return ExprNode::binary(BinaryOp::Pow, b, ExprNode::number(rational()));
        }
        return b;
    }

    // exponent: rational constant only (optionally negative)
    double rational() {
        double sign = 1.0;
        if (lex_.peek().type == Tok::Minus) {
            lex_.take();
            sign = -1.0;
        }
        if (lex_.peek().type != Tok::Number)
            fail("rational exponent", {"number"});
        return sign * lex_.take().number;
    }

    ExprPtr base() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Tok::Number:
                return ExprNode::number(lex_.take().number);
            case Tok::Var:
                lex_.take();
                return ExprNode::var();
            case Tok::Ident: {
                Token id = lex_.take();
                if (lex_.peek().type == Tok::LParen) {
                    UnaryOp op;
                    if (id.text == "sqrt") op = UnaryOp::Sqrt;
                    else if (id.text == "exp") op = UnaryOp::Exp;
                    else if (id.text == "ln") op = UnaryOp::Ln;
                    else if (id.text == "sin") op = UnaryOp::Sin;
                    else if (id.text == "cos") op = UnaryOp::Cos;
                    else
                        throw ParseError("unknown function '" + id.text + "'", id.offset,
                                         {"sqrt", "exp", "ln", "sin", "cos"});
                    lex_.take(); // '('
                    ExprPtr arg = expr();
                    if (lex_.peek().type != Tok::RParen)
                        fail("')'", {"')'"});
                    lex_.take();
                    return ExprNode::unary(op, arg);
                }
                return ExprNode::param(id.text);
            }
            case Tok::LParen: {
                lex_.take();
                ExprPtr e = expr();
                if (lex_.peek().type != Tok::RParen)
                    fail("')'", {"')'"});
                lex_.take();
                return e;
            }
            default:
                fail("an operand", {"number", "'z'", "identifier", "'('", "'-'"});
        }
    }
};

} // namespace

ExprPtr parse(const std::string& source) {
    return Parser(source).run();
}

// --------------------------------------------------------- differentiation

ExprPtr differentiate(const ExprPtr& e) {
    using N = ExprNode;
    switch (e->kind()) {
        case N::Kind::Number:
        case N::Kind::Param:
            return N::number(0.0);
        case N::Kind::Var:
            return N::number(1.0);
        case N::Kind::Unary: {
            ExprPtr u = e->lhs();
            ExprPtr du = differentiate(u);
            switch (e->unary_op()) {
                case UnaryOp::Neg:
                    return N::unary(UnaryOp::Neg, du);
                case UnaryOp::Sqrt: // u' / (2 sqrt u)
                    return N::binary(BinaryOp::Div, du,
                                     N::binary(BinaryOp::Mul, N::number(2.0),
                                               N::unary(UnaryOp::Sqrt, u)));
                case UnaryOp::Exp:
                    return N::binary(BinaryOp::Mul, du, e);
                case UnaryOp::Ln:
                    return N::binary(BinaryOp::Div, du, u);
                case UnaryOp::Sin:
                    return N::binary(BinaryOp::Mul, du, N::unary(UnaryOp::Cos, u));
                case UnaryOp::Cos:
                    return N::unary(UnaryOp::Neg,
                                    N::binary(BinaryOp::Mul, du, N::unary(UnaryOp::Sin, u)));
            }
            break;
        }
        case N::Kind::Binary: {
            ExprPtr u = e->lhs(), v = e->rhs();
            switch (e->binary_op()) {
                case BinaryOp::Add:
                    return N::binary(BinaryOp::Add, differentiate(u), differentiate(v));
                case BinaryOp::Sub:
                    return N::binary(BinaryOp::Sub, differentiate(u), differentiate(v));
                case BinaryOp::Mul:
                    return N::binary(BinaryOp::Add,
                                     N::binary(BinaryOp::Mul, differentiate(u), v),
                                     N::binary(BinaryOp::Mul, u, differentiate(v)));
                case BinaryOp::Div:
                    // (u'v - uv') / v^2
                    return N::binary(
                        BinaryOp::Div,
                        N::binary(BinaryOp::Sub,
                                  N::binary(BinaryOp::Mul, differentiate(u), v),
                                  N::binary(BinaryOp::Mul, u, differentiate(v))),
                        N::binary(BinaryOp::Pow, v, N::number(2.0)));
                case BinaryOp::Pow: {
                    // r u^(r-1) u' with rational constant r
                    double r = v->value();
                    if (r == 0.0) return N::number(0.0);
                    ExprPtr power = (r == 1.0)
                                        ? u
                                        : ExprPtr(N::binary(BinaryOp::Pow, u, N::number(r - 1.0)));
                    ExprPtr pw = (r - 1.0 == 0.0) ? N::number(1.0) : power;
                    return N::binary(BinaryOp::Mul, N::number(r),
                                     N::binary(BinaryOp::Mul, pw, differentiate(u)));
                }
            }
            break;
        }
    }
    throw Error("differentiate: invalid expression tree");
}

// -------------------------------------------------------------- evaluation

namespace {

[[noreturn]] void eval_fail(const ExprPtr& e, const std::string& why) {
    throw EvalError(why + " in subexpression '" + to_string(e) + "'");
}

bool is_integer(double r) {
    return std::rint(r) == r && std::abs(r) < 1e15;
}

} // namespace

double evaluate(const ExprPtr& e, double z, const ParamSet& params) {
    using N = ExprNode;
    double result = 0.0;
    switch (e->kind()) {
        case N::Kind::Number:
            return e->value();
        case N::Kind::Var:
            return z;
        case N::Kind::Param: {
            auto it = params.find(e->name());
            if (it == params.end())
                throw EvalError("unbound parameter '" + e->name() + "'");
            return it->second;
        }
        case N::Kind::Unary: {
            double u = evaluate(e->lhs(), z, params);
            switch (e->unary_op()) {
                case UnaryOp::Neg: result = -u; break;
                case UnaryOp::Sqrt:
                    if (u < 0.0) eval_fail(e, "sqrt of negative argument");
                    result = std::sqrt(u);
                    break;
                case UnaryOp::Exp: result = std::exp(u); break;
                case UnaryOp::Ln:
                    if (u <= 0.0) eval_fail(e, "ln of non-positive argument");
                    result = std::log(u);
                    break;
                case UnaryOp::Sin: result = std::sin(u); break;
                case UnaryOp::Cos: result = std::cos(u); break;
            }
            break;
        }
        case N::Kind::Binary: {
            double u = evaluate(e->lhs(), z, params);
            switch (e->binary_op()) {
                case BinaryOp::Add: result = u + evaluate(e->rhs(), z, params); break;
                case BinaryOp::Sub: result = u - evaluate(e->rhs(), z, params); break;
                case BinaryOp::Mul: result = u * evaluate(e->rhs(), z, params); break;
                case BinaryOp::Div: {
                    double v = evaluate(e->rhs(), z, params);
                    if (v == 0.0) eval_fail(e, "division by zero");
                    result = u / v;
                    break;
                }
                case BinaryOp::Pow: {
                    double r = e->rhs()->value();
                    if (u == 0.0 && r < 0.0) eval_fail(e, "zero raised to negative power");
                    if (u < 0.0 && !is_integer(r))
                        eval_fail(e, "negative base with non-integer exponent");
                    result = std::pow(u, r);
                    break;
                }
            }
            break;
        }
    }
    if (!std::isfinite(result)) eval_fail(e, "non-finite value");
    return result;
}

// ---------------------------------------------------------------- printing

namespace {

// precedence: add/sub 1, mul/div 2, unary minus 3, pow 4, atoms 5
int precedence(const ExprPtr& e) {
    switch (e->kind()) {
        case ExprNode::Kind::Number:
            return e->value() < 0.0 ? 3 : 5;
        case ExprNode::Kind::Var:
        case ExprNode::Kind::Param:
            return 5;
        case ExprNode::Kind::Unary:
            return e->unary_op() == UnaryOp::Neg ? 3 : 5;
        case ExprNode::Kind::Binary:
            switch (e->binary_op()) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
    }
    return 5;
}

std::string fmt_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print(const ExprPtr& e, std::string& out);

void print_child(const ExprPtr& child, int parent_prec, bool strict, std::string& out) {
    bool parens = strict ? precedence(child) <= parent_prec : precedence(child) < parent_prec;
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
}

void print(const ExprPtr& e, std::string& out) {
    switch (e->kind()) {
        case ExprNode::Kind::Number:
            out += fmt_number(e->value());
            return;
        case ExprNode::Kind::Var:
            out += 'z';
            return;
        case ExprNode::Kind::Param:
            out += e->name();
            return;
        case ExprNode::Kind::Unary: {
            const char* fn = nullptr;
            switch (e->unary_op()) {
                case UnaryOp::Neg:
                    out += '-';
                    print_child(e->lhs(), 3, false, out);
                    return;
                case UnaryOp::Sqrt: fn = "sqrt"; break;
                case UnaryOp::Exp: fn = "exp"; break;
                case UnaryOp::Ln: fn = "ln"; break;
                case UnaryOp::Sin: fn = "sin"; break;
                case UnaryOp::Cos: fn = "cos"; break;
            }
            out += fn;
            out += '(';
            print(e->lhs(), out);
            out += ')';
            return;
        }
        case ExprNode::Kind::Binary: {
            switch (e->binary_op()) {
                // right children of same precedence are parenthesized even for
                // + and *, so the reparsed tree keeps the exact shape (IEEE
                // addition and multiplication are not associative)
                case BinaryOp::Add:
                    print_child(e->lhs(), 1, false, out);
                    out += " + ";
                    print_child(e->rhs(), 1, true, out);
                    return;
                case BinaryOp::Sub:
                    print_child(e->lhs(), 1, false, out);
                    out += " - ";
                    print_child(e->rhs(), 1, true, out);
                    return;
                case BinaryOp::Mul:
                    print_child(e->lhs(), 2, false, out);
                    out += "*";
                    print_child(e->rhs(), 2, true, out);
                    return;
                case BinaryOp::Div:
                    print_child(e->lhs(), 2, false, out);
                    out += "/";
                    print_child(e->rhs(), 2, true, out);
                    return;
                case BinaryOp::Pow:
                    print_child(e->lhs(), 4, true, out);
                    out += '^';
                    out += fmt_number(e->rhs()->value());
                    return;
            }
        }
    }
}

} // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    print(e, out);
    return out;
}

// ----------------------------------------------------------------- queries

namespace {

void collect_params(const ExprPtr& e, std::vector<std::string>& out) {
    switch (e->kind()) {
        case ExprNode::Kind::Param:
            for (const auto& n : out)
                if (n == e->name()) return;
            out.push_back(e->name());
            return;
        case ExprNode::Kind::Unary:
            collect_params(e->lhs(), out);
            return;
        case ExprNode::Kind::Binary:
            collect_params(e->lhs(), out);
            collect_params(e->rhs(), out);
            return;
        default:
            return;
    }
}

bool contains_z(const ExprPtr& e) {
    switch (e->kind()) {
        case ExprNode::Kind::Var: return true;
        case ExprNode::Kind::Unary: return contains_z(e->lhs());
        case ExprNode::Kind::Binary: return contains_z(e->lhs()) || contains_z(e->rhs());
        default: return false;
    }
}

} // namespace

std::vector<std::string> parameters_of(const ExprPtr& e) {
    std::vector<std::string> out;
    collect_params(e, out);
    return out;
}

bool divides_by_z(const ExprPtr& e) {
    switch (e->kind()) {
        case ExprNode::Kind::Unary:
            return divides_by_z(e->lhs());
        case ExprNode::Kind::Binary:
            if (e->binary_op() == BinaryOp::Div && contains_z(e->rhs()))
                return true;
            if (e->binary_op() == BinaryOp::Pow && e->rhs()->value() < 0.0 &&
                contains_z(e->lhs()))
                return true;
            return divides_by_z(e->lhs()) || divides_by_z(e->rhs());
        default:
            return false;
    }
}

} // namespace pim
