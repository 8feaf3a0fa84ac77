#pragma once

// Coefficient expressions a_k(x, y), f(x, y).
//
// Grammar (usual precedence, left associative):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | primary
//   primary := number | 'x' | 'y' | 'pi' | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
// A divisor must not depend on x or y and must be nonzero, so every
// expression is total on the plane. A unary minus applied to a literal is
// folded into the literal.

#include <memory>
#include <string>
#include <string_view>

namespace polysinc {

enum class Axis { x, y };

class CoefficientExpr {
public:
    enum class Kind { number, pi, var_x, var_y, neg, sin, cos, add, sub, mul, div };

    /// The constant 0.
    CoefficientExpr();

    static CoefficientExpr number(double v);
    static CoefficientExpr pi();
    static CoefficientExpr x();
    static CoefficientExpr y();
    static CoefficientExpr neg(CoefficientExpr e);
    static CoefficientExpr sin(CoefficientExpr e);
    static CoefficientExpr cos(CoefficientExpr e);
    static CoefficientExpr add(CoefficientExpr a, CoefficientExpr b);
    static CoefficientExpr sub(CoefficientExpr a, CoefficientExpr b);
    static CoefficientExpr mul(CoefficientExpr a, CoefficientExpr b);
    /// Throws DomainError for a non-constant or zero divisor.
    static CoefficientExpr div(CoefficientExpr a, CoefficientExpr b);

    Kind kind() const noexcept;
    /// Literal value; only meaningful for Kind::number.
    double literal() const noexcept;

    double operator()(double x, double y) const;

    /// True when the expression does not mention x or y.
    bool is_constant() const noexcept;
    /// True when the expression is the literal 0.
    bool is_zero() const noexcept;

    /// Symbolic partial derivative, lightly simplified.
    CoefficientExpr derivative(Axis axis) const;

    /// Minimal-parenthesis rendering that parses back to the same tree.
    std::string str() const;

    friend bool operator==(const CoefficientExpr& a, const CoefficientExpr& b);

private:
    struct Node;
    explicit CoefficientExpr(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

/// Throws ParseError / UnknownSymbolError.
CoefficientExpr parse_coefficient(std::string_view src);

}  // namespace polysinc
