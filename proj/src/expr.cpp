#include "prc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace prc {

using ast::Func;
using ast::Kind;
using ast::Node;
using ast::NodePtr;

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    double number = 0.0;
    bool numberIsInteger = false;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;

    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[i_];
        switch (c) {
            case '+': tok_.kind = Tok::Plus; ++i_; return;
            case '-': tok_.kind = Tok::Minus; ++i_; return;
            case '*': tok_.kind = Tok::Star; ++i_; return;
            case '/': tok_.kind = Tok::Slash; ++i_; return;
            case '^': tok_.kind = Tok::Caret; ++i_; return;
            case '(': tok_.kind = Tok::LParen; ++i_; return;
            case ')': tok_.kind = Tok::RParen; ++i_; return;
            case ',': tok_.kind = Tok::Comma; ++i_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i_;
            bool sawDot = false, sawExp = false;
            while (i_ < src_.size()) {
                char d = src_[i_];
                if (std::isdigit(static_cast<unsigned char>(d))) { ++i_; continue; }
                if (d == '.' && !sawDot && !sawExp) { sawDot = true; ++i_; continue; }
                if ((d == 'e' || d == 'E') && !sawExp && i_ + 1 < src_.size()) {
                    char n = src_[i_ + 1];
                    if (std::isdigit(static_cast<unsigned char>(n)) || n == '+' || n == '-') {
                        sawExp = true;
                        i_ += 2;
                        continue;
                    }
                }
                break;
            }
            tok_.kind = Tok::Number;
            tok_.text = std::string(src_.substr(start, i_ - start));
            tok_.number = std::strtod(tok_.text.c_str(), nullptr);
            tok_.numberIsInteger = !sawDot && !sawExp;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                ++i_;
            tok_.kind = Tok::Ident;
            tok_.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
};

const char* tokenName(Tok t) {
    switch (t) {
        case Tok::Number: return "number";
        case Tok::Ident: return "identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::End: return "end of input";
    }
    return "?";
}

NodePtr makeBinary(Kind k, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

} // namespace

class Parser {
public:
    Parser(std::string_view src, int dim) : lex_(src), dim_(dim) {}

    Expression run() {
        Expression e;
        e.root_ = parseExpression();
        e.dim_ = dim_;
        expect(Tok::End, "operator or end of input");
        return e;
    }

private:
    Lexer lex_;
    int dim_;

    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = lex_.peek();
        throw ParseError("syntax error: expected " + expected + ", found " +
                             tokenName(t.kind),
                         t.pos);
    }

    Token expect(Tok k, const std::string& what) {
        if (lex_.peek().kind != k) fail(what);
        return lex_.take();
    }

    NodePtr parseExpression() {
        NodePtr n = parseTerm();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Tok op = lex_.take().kind;
            n = makeBinary(op == Tok::Plus ? Kind::Add : Kind::Sub, n, parseTerm());
        }
        return n;
    }

    NodePtr parseTerm() {
        NodePtr n = parseFactor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            Tok op = lex_.take().kind;
            n = makeBinary(op == Tok::Star ? Kind::Mul : Kind::Div, n, parseFactor());
        }
        return n;
    }

    NodePtr parseFactor() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            auto n = std::make_shared<Node>();
            n->kind = Kind::Neg;
            n->lhs = parseFactor();
            return n;
        }
        return parsePower();
    }

    NodePtr parsePower() {
        NodePtr base = parsePrimary();
        if (lex_.peek().kind != Tok::Caret) return base;
        lex_.take();
        auto n = std::make_shared<Node>();
        n->kind = Kind::Pow;
        n->lhs = std::move(base);
        n->exponent = parseExponent();
        return n;
    }

    long integerToken(const char* what) {
        const Token& t = lex_.peek();
        if (t.kind != Tok::Number || !t.numberIsInteger)
            fail(std::string("integer ") + what);
        return static_cast<long>(lex_.take().number);
    }

    Rational parseExponent() {
        Rational r;
        long sign = 1;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            sign = -1;
        }
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            long innerSign = 1;
            if (lex_.peek().kind == Tok::Minus) {
                lex_.take();
                innerSign = -1;
            }
            r.num = innerSign * integerToken("numerator");
            if (lex_.peek().kind == Tok::Slash) {
                lex_.take();
                r.den = integerToken("denominator");
                if (r.den == 0) fail("nonzero denominator");
            }
            expect(Tok::RParen, "')'");
        } else {
            r.num = integerToken("exponent");
        }
        r.num *= sign;
        return r;
    }

    NodePtr parsePrimary() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Number) {
            Token num = lex_.take();
            auto n = std::make_shared<Node>();
            n->kind = Kind::Number;
            n->number = num.number;
            return n;
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            NodePtr inner = parseExpression();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            Token id = lex_.take();
            if (id.text.size() >= 2 && id.text[0] == 'x' &&
                std::isdigit(static_cast<unsigned char>(id.text[1]))) {
                bool allDigits = true;
                for (std::size_t i = 1; i < id.text.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(id.text[i]))) allDigits = false;
                if (allDigits) {
                    long k = std::strtol(id.text.c_str() + 1, nullptr, 10);
                    if (k < 1 || k > dim_)
                        throw ParseError("variable '" + id.text + "' exceeds dimension " +
                                             std::to_string(dim_),
                                         id.pos);
                    auto n = std::make_shared<Node>();
                    n->kind = Kind::Variable;
                    n->varIndex = static_cast<int>(k - 1);
                    return n;
                }
            }
            Func f;
            if (id.text == "sin") f = Func::Sin;
            else if (id.text == "cos") f = Func::Cos;
            else if (id.text == "exp") f = Func::Exp;
            else if (id.text == "ln") f = Func::Ln;
            else if (id.text == "sqrt") f = Func::Sqrt;
            else if (id.text == "tanh") f = Func::Tanh;
            else throw ParseError("unknown identifier '" + id.text + "'", id.pos);
            expect(Tok::LParen, "'(' after function name");
            NodePtr arg = parseExpression();
            if (lex_.peek().kind == Tok::Comma)
                throw ParseError("function '" + id.text + "' takes exactly one argument",
                                 lex_.peek().pos);
            expect(Tok::RParen, "')'");
            auto n = std::make_shared<Node>();
            n->kind = Kind::Call;
            n->func = f;
            n->lhs = std::move(arg);
            return n;
        }
        fail("number, variable, function, or '('");
    }
};

Expression Expression::parse(std::string_view source, int dim) {
    return Parser(source, dim).run();
}

// ---------------------------------------------------------------- printing

namespace {

int precedenceOf(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void printNumber(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void printNode(std::ostream& os, const Node& n, int parentPrec, bool rightOperand) {
    int prec = precedenceOf(n.kind);
    bool parens = prec < parentPrec || (prec == parentPrec && rightOperand);
    switch (n.kind) {
        case Kind::Number:
            if (n.number < 0) {
                os << '(';
                printNumber(os, n.number);
                os << ')';
            } else {
                printNumber(os, n.number);
            }
            return;
        case Kind::Variable:
            os << 'x' << (n.varIndex + 1);
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            if (parens) os << '(';
            printNode(os, *n.lhs, prec, false);
            switch (n.kind) {
                case Kind::Add: os << " + "; break;
                case Kind::Sub: os << " - "; break;
                case Kind::Mul: os << "*"; break;
                case Kind::Div: os << "/"; break;
                default: break;
            }
            printNode(os, *n.rhs, prec, true);
            if (parens) os << ')';
            return;
        }
        case Kind::Neg:
            if (parens) os << '(';
            os << '-';
            printNode(os, *n.lhs, prec, true);
            if (parens) os << ')';
            return;
        case Kind::Pow:
            if (parens) os << '(';
            printNode(os, *n.lhs, prec + 1, false); // base binds tighter than '^'
            os << '^';
            if (n.exponent.isInteger()) {
                if (n.exponent.num < 0)
                    os << '(' << n.exponent.num << ')';
                else
                    os << n.exponent.num;
            } else {
                os << '(' << n.exponent.num << '/' << n.exponent.den << ')';
            }
            if (parens) os << ')';
            return;
        case Kind::Call: {
            switch (n.func) {
                case Func::Sin: os << "sin"; break;
                case Func::Cos: os << "cos"; break;
                case Func::Exp: os << "exp"; break;
                case Func::Ln: os << "ln"; break;
                case Func::Sqrt: os << "sqrt"; break;
                case Func::Tanh: os << "tanh"; break;
            }
            os << '(';
            printNode(os, *n.lhs, 0, false);
            os << ')';
            return;
        }
    }
}

std::string printSubtree(const Node& n) {
    std::ostringstream os;
    printNode(os, n, 0, false);
    return os.str();
}

// ---------------------------------------------------------------- evaluation

double powRational(double v, const Rational& r, const Node& where) {
    if (r.isInteger()) {
        long e = r.num;
        if (e < 0 && v == 0.0)
            throw DomainError("zero base with negative exponent in '" + printSubtree(where) + "'");
        double base = (e < 0) ? 1.0 / v : v;
        long k = std::labs(e);
        double acc = 1.0;
        while (k > 0) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }
    if (v <= 0.0)
        throw DomainError("non-integer power of non-positive base in '" + printSubtree(where) +
                          "'");
    return std::pow(v, r.toDouble());
}

Jet powRational(const Jet& v, const Rational& r, const Node& where) {
    try {
        if (r.isInteger()) return powi(v, r.num);
        return pow(v, r.toDouble());
    } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " in '" + printSubtree(where) + "'");
    }
}

template <class T>
T evalNode(const Node& n, std::span<const T> coords) {
    switch (n.kind) {
        case Kind::Number:
            if constexpr (std::is_same_v<T, double>) return n.number;
            else return Jet(coords[0].layout(), n.number);
        case Kind::Variable:
            return coords[static_cast<std::size_t>(n.varIndex)];
        case Kind::Add: return evalNode(*n.lhs, coords) + evalNode(*n.rhs, coords);
        case Kind::Sub: return evalNode(*n.lhs, coords) - evalNode(*n.rhs, coords);
        case Kind::Mul: return evalNode(*n.lhs, coords) * evalNode(*n.rhs, coords);
        case Kind::Div: {
            T num = evalNode(*n.lhs, coords);
            T den = evalNode(*n.rhs, coords);
            if constexpr (std::is_same_v<T, double>) {
                if (den == 0.0)
                    throw DomainError("division by zero in '" + printSubtree(n) + "'");
                return num / den;
            } else {
                if (den.value() == 0.0)
                    throw DomainError("division by zero in '" + printSubtree(n) + "'");
                return num / den;
            }
        }
        case Kind::Neg: return -evalNode(*n.lhs, coords);
        case Kind::Pow: return powRational(evalNode(*n.lhs, coords), n.exponent, n);
        case Kind::Call: {
            T a = evalNode(*n.lhs, coords);
            using std::cos;
            using std::exp;
            using std::log;
            using std::sin;
            using std::sqrt;
            using std::tanh;
            auto check = [&](double v, const char* fn) {
                if (v <= 0.0)
                    throw DomainError(std::string(fn) + " of non-positive value in '" +
                                      printSubtree(n) + "'");
            };
            double v;
            if constexpr (std::is_same_v<T, double>) v = a;
            else v = a.value();
            switch (n.func) {
                case Func::Sin: return sin(a);
                case Func::Cos: return cos(a);
                case Func::Exp: return exp(a);
                case Func::Ln: check(v, "ln"); return log(a);
                case Func::Sqrt: check(v, "sqrt"); return sqrt(a);
                case Func::Tanh: return tanh(a);
            }
            throw Error("unreachable");
        }
    }
    throw Error("unreachable");
}

bool nodesEqual(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::Number: return a.number == b.number;
        case Kind::Variable: return a.varIndex == b.varIndex;
        case Kind::Pow:
            return a.exponent.num == b.exponent.num && a.exponent.den == b.exponent.den &&
                   nodesEqual(*a.lhs, *b.lhs);
        case Kind::Neg: return nodesEqual(*a.lhs, *b.lhs);
        case Kind::Call: return a.func == b.func && nodesEqual(*a.lhs, *b.lhs);
        default: return nodesEqual(*a.lhs, *b.lhs) && nodesEqual(*a.rhs, *b.rhs);
    }
}

} // namespace

std::string Expression::print() const {
    if (!root_) return "";
    return printSubtree(*root_);
}

double Expression::evaluate(std::span<const double> coords) const {
    if (static_cast<int>(coords.size()) < dim_) throw Error("evaluate: too few coordinates");
    return evalNode<double>(*root_, coords);
}

Jet Expression::evaluate(std::span<const Jet> coords) const {
    if (static_cast<int>(coords.size()) < dim_) throw Error("evaluate: too few coordinates");
    return evalNode<Jet>(*root_, coords);
}

bool Expression::structurallyEqual(const Expression& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return nodesEqual(*root_, *other.root_);
}

} // namespace prc
