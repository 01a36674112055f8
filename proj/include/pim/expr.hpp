#pragma once

#include <map>
#include <memory>
#include <string>

#include "pim/errors.hpp"

namespace pim {

// Parameter bindings for expression evaluation. Names are unique by
// construction (std::map); values must be finite.
using ParamSet = std::map<std::string, double>;

class ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class UnaryOp { Neg, Sqrt, Exp, Ln, Sin, Cos };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Immutable arithmetic expression tree in the single variable z with named
// parameters. Pow exponents are restricted to rational constants (the right
// child is always a Number node), which keeps differentiation closed-form.
class ExprNode {
public:
    enum class Kind { Number, Var, Param, Unary, Binary };

    static ExprPtr number(double v);
    static ExprPtr var();
    static ExprPtr param(std::string name);
    static ExprPtr unary(UnaryOp op, ExprPtr child);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

    Kind kind() const { return kind_; }
    double value() const { return value_; }             // Kind::Number
    const std::string& name() const { return name_; }   // Kind::Param
    UnaryOp unary_op() const { return uop_; }
    BinaryOp binary_op() const { return bop_; }
    const ExprPtr& lhs() const { return lhs_; }          // Unary child too
    const ExprPtr& rhs() const { return rhs_; }

private:
    Kind kind_;
    double value_ = 0.0;
    std::string name_;
    UnaryOp uop_ = UnaryOp::Neg;
    BinaryOp bop_ = BinaryOp::Add;
    ExprPtr lhs_, rhs_;

    explicit ExprNode(Kind k) : kind_(k) {}
};

// Parse UTF-8 source per the grammar
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | base ("^" rational)?
//   base   := number | "z" | ident | ident "(" expr ")" | "(" expr ")"
// with precedence ^ > unary- > *,/ > +,-. Identifiers outside
// {sqrt, exp, ln, sin, cos} are parameters. U+2212 is accepted as minus.
// Throws ParseError with byte offset and expected-token set.
ExprPtr parse(const std::string& source);

// d/dz by the standard rules; parameters are treated as constants.
ExprPtr differentiate(const ExprPtr& e);

// IEEE double evaluation. Division by zero, ln/sqrt of non-positive
// arguments, invalid powers, unbound parameters and non-finite results all
// throw (EvalError), never return NaN silently.
double evaluate(const ExprPtr& e, double z, const ParamSet& params = {});

// Round-trippable textual form: parse(to_string(e)) evaluates identically.
std::string to_string(const ExprPtr& e);

// Names of all parameters referenced anywhere in the tree.
std::vector<std::string> parameters_of(const ExprPtr& e);

// True if any division in the tree has z in its denominator (or a power of z
// with negative exponent appears) -- used to auto-declare a pole at z=0.
bool divides_by_z(const ExprPtr& e);

} // namespace pim
