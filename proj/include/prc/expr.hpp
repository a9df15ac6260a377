#pragma once
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "prc/jet.hpp"

namespace prc {

// Exact rational exponent for the power operator.
struct Rational {
    long num = 0;
    long den = 1;
    bool isInteger() const { return den == 1; }
    double toDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
};

namespace ast {

enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow, Call };
enum class Func { Sin, Cos, Exp, Ln, Sqrt, Tanh };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    double number = 0.0;     // Number
    int varIndex = -1;       // Variable, 0-based
    Rational exponent;       // Pow
    Func func = Func::Sin;   // Call
    NodePtr lhs, rhs;        // operands (Neg/Call/Pow use lhs only)
};

} // namespace ast

// Immutable parsed analytic expression in variables x1..xn.
// Grammar (EBNF, documented in the README):
//   expression := term { ("+"|"-") term }
//   term       := factor { ("*"|"/") factor }
//   factor     := "-" factor | power
//   power      := primary [ "^" exponent ]
//   exponent   := ["-"] integer | "(" ["-"] integer [ "/" integer ] ")"
//   primary    := number | variable | function "(" expression ")" | "(" expression ")"
//   function   := "sin" | "cos" | "exp" | "ln" | "sqrt" | "tanh"
//   variable   := "x" digit { digit }
class Expression {
public:
    Expression() = default;

    static Expression parse(std::string_view source, int dim);

    // Canonical re-serialization; parse(print()) is structurally identical.
    std::string print() const;

    double evaluate(std::span<const double> coords) const;
    Jet evaluate(std::span<const Jet> coords) const;

    bool structurallyEqual(const Expression& other) const;

    int dimension() const { return dim_; }
    bool empty() const { return root_ == nullptr; }

private:
    ast::NodePtr root_;
    int dim_ = 0;
    friend class Parser;
};

} // namespace prc
