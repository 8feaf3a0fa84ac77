#include "polysinc/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

#include "polysinc/errors.hpp"

namespace polysinc {

struct CoefficientExpr::Node {
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Kind = CoefficientExpr::Kind;

int precedence(Kind k) {
    switch (k) {
        case Kind::add:
        case Kind::sub:
            return 1;
        case Kind::mul:
        case Kind::div:
            return 2;
        case Kind::neg:
            return 3;
        default:
            return 4;
    }
}

std::string format_literal(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    CoefficientExpr parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        auto e = expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    CoefficientExpr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = CoefficientExpr::add(lhs, term());
            else if (accept('-'))
                lhs = CoefficientExpr::sub(lhs, term());
            else
                return lhs;
        }
    }

    CoefficientExpr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = CoefficientExpr::mul(lhs, unary());
            } else if (accept('/')) {
                skip_ws();
                const std::size_t at = pos_;
                auto rhs = unary();
                if (!rhs.is_constant()) throw ParseError("divisor must not depend on x or y", at);
                if (rhs(0.0, 0.0) == 0.0) throw ParseError("division by zero", at);
                lhs = CoefficientExpr::div(lhs, rhs);
            } else {
                return lhs;
            }
        }
    }

    CoefficientExpr unary() {
        if (accept('-')) return CoefficientExpr::neg(unary());
        if (accept('+')) return unary();
        return primary();
    }

    CoefficientExpr primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (accept('(')) {
            auto e = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    CoefficientExpr number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        double v = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
            throw ParseError("malformed number '" + std::string(first, last) + "'", start);
        return CoefficientExpr::number(v);
    }

    CoefficientExpr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return CoefficientExpr::x();
        if (name == "y") return CoefficientExpr::y();
        if (name == "pi") return CoefficientExpr::pi();
        if (name == "sin" || name == "cos") {
            if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
            auto arg = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return name == "sin" ? CoefficientExpr::sin(arg) : CoefficientExpr::cos(arg);
        }
        throw UnknownSymbolError(std::string(name), start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Simplifying builders used by differentiation only; the plain constructors
// keep the tree exactly as written so printing round-trips.
CoefficientExpr s_add(const CoefficientExpr& a, const CoefficientExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return CoefficientExpr::add(a, b);
}

CoefficientExpr s_sub(const CoefficientExpr& a, const CoefficientExpr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return CoefficientExpr::neg(b);
    return CoefficientExpr::sub(a, b);
}

bool is_one(const CoefficientExpr& e) {
    return e.kind() == Kind::number && e.literal() == 1.0;
}

CoefficientExpr s_mul(const CoefficientExpr& a, const CoefficientExpr& b) {
    if (a.is_zero() || b.is_zero()) return CoefficientExpr();
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return CoefficientExpr::mul(a, b);
}

CoefficientExpr s_neg(const CoefficientExpr& a) {
    if (a.is_zero()) return a;
    return CoefficientExpr::neg(a);
}

}  // namespace

CoefficientExpr::CoefficientExpr() : CoefficientExpr(number(0.0)) {}

CoefficientExpr::CoefficientExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CoefficientExpr CoefficientExpr::number(double v) {
    if (!std::isfinite(v)) throw DomainError("coefficient literal must be finite");
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::number, v, nullptr, nullptr}));
}

CoefficientExpr CoefficientExpr::pi() {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::pi, 0.0, nullptr, nullptr}));
}

CoefficientExpr CoefficientExpr::x() {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::var_x, 0.0, nullptr, nullptr}));
}

CoefficientExpr CoefficientExpr::y() {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::var_y, 0.0, nullptr, nullptr}));
}

CoefficientExpr CoefficientExpr::neg(CoefficientExpr e) {
    if (e.kind() == Kind::number) return number(-e.literal());
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::neg, 0.0, e.node_, nullptr}));
}

CoefficientExpr CoefficientExpr::sin(CoefficientExpr e) {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::sin, 0.0, e.node_, nullptr}));
}

CoefficientExpr CoefficientExpr::cos(CoefficientExpr e) {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::cos, 0.0, e.node_, nullptr}));
}

CoefficientExpr CoefficientExpr::add(CoefficientExpr a, CoefficientExpr b) {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::add, 0.0, a.node_, b.node_}));
}

CoefficientExpr CoefficientExpr::sub(CoefficientExpr a, CoefficientExpr b) {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::sub, 0.0, a.node_, b.node_}));
}

CoefficientExpr CoefficientExpr::mul(CoefficientExpr a, CoefficientExpr b) {
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::mul, 0.0, a.node_, b.node_}));
}

CoefficientExpr CoefficientExpr::div(CoefficientExpr a, CoefficientExpr b) {
    if (!b.is_constant()) throw DomainError("divisor must not depend on x or y");
    if (b(0.0, 0.0) == 0.0) throw DomainError("division by zero");
    return CoefficientExpr(std::make_shared<const Node>(Node{Kind::div, 0.0, a.node_, b.node_}));
}

CoefficientExpr::Kind CoefficientExpr::kind() const noexcept { return node_->kind; }

double CoefficientExpr::literal() const noexcept { return node_->value; }

double CoefficientExpr::operator()(double x, double y) const {
    const Node& n = *node_;
    auto child = [](const std::shared_ptr<const Node>& c) { return CoefficientExpr(c); };
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::pi: return std::numbers::pi;
        case Kind::var_x: return x;
        case Kind::var_y: return y;
        case Kind::neg: return -child(n.lhs)(x, y);
        case Kind::sin: return std::sin(child(n.lhs)(x, y));
        case Kind::cos: return std::cos(child(n.lhs)(x, y));
        case Kind::add: return child(n.lhs)(x, y) + child(n.rhs)(x, y);
        case Kind::sub: return child(n.lhs)(x, y) - child(n.rhs)(x, y);
        case Kind::mul: return child(n.lhs)(x, y) * child(n.rhs)(x, y);
        case Kind::div: return child(n.lhs)(x, y) / child(n.rhs)(x, y);
    }
    return 0.0;
}

bool CoefficientExpr::is_constant() const noexcept {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::var_x:
        case Kind::var_y:
            return false;
        case Kind::number:
        case Kind::pi:
            return true;
        default:
            break;
    }
    if (n.lhs && !CoefficientExpr(n.lhs).is_constant()) return false;
    if (n.rhs && !CoefficientExpr(n.rhs).is_constant()) return false;
    return true;
}

bool CoefficientExpr::is_zero() const noexcept {
    return node_->kind == Kind::number && node_->value == 0.0;
}

CoefficientExpr CoefficientExpr::derivative(Axis axis) const {
    const Node& n = *node_;
    const CoefficientExpr lhs = n.lhs ? CoefficientExpr(n.lhs) : CoefficientExpr();
    const CoefficientExpr rhs = n.rhs ? CoefficientExpr(n.rhs) : CoefficientExpr();
    switch (n.kind) {
        case Kind::number:
        case Kind::pi:
            return CoefficientExpr();
        case Kind::var_x:
            return number(axis == Axis::x ? 1.0 : 0.0);
        case Kind::var_y:
            return number(axis == Axis::y ? 1.0 : 0.0);
        case Kind::neg:
            return s_neg(lhs.derivative(axis));
        case Kind::sin:
            return s_mul(cos(lhs), lhs.derivative(axis));
        case Kind::cos:
            return s_neg(s_mul(sin(lhs), lhs.derivative(axis)));
        case Kind::add:
            return s_add(lhs.derivative(axis), rhs.derivative(axis));
        case Kind::sub:
            return s_sub(lhs.derivative(axis), rhs.derivative(axis));
        case Kind::mul:
            return s_add(s_mul(lhs.derivative(axis), rhs), s_mul(lhs, rhs.derivative(axis)));
        case Kind::div: {
            auto d = lhs.derivative(axis);
            return d.is_zero() ? d : div(d, rhs);
        }
    }
    return CoefficientExpr();
}

std::string CoefficientExpr::str() const {
    const Node& n = *node_;
    const int mine = precedence(n.kind);
    auto wrap = [](const std::shared_ptr<const Node>& c, bool parens) {
        const std::string s = CoefficientExpr(c).str();
        return parens ? "(" + s + ")" : s;
    };
    auto child_prec = [](const std::shared_ptr<const Node>& c) {
        // a negative literal prints with a leading '-', i.e. like a negation
        if (c->kind == Kind::number && std::signbit(c->value)) return 3;
        return precedence(c->kind);
    };
    switch (n.kind) {
        case Kind::number: return format_literal(n.value);
        case Kind::pi: return "pi";
        case Kind::var_x: return "x";
        case Kind::var_y: return "y";
        case Kind::neg: return "-" + wrap(n.lhs, child_prec(n.lhs) < mine);
        case Kind::sin: return "sin(" + CoefficientExpr(n.lhs).str() + ")";
        case Kind::cos: return "cos(" + CoefficientExpr(n.lhs).str() + ")";
        case Kind::add:
        case Kind::sub:
        case Kind::mul:
        case Kind::div: {
            const char* op = n.kind == Kind::add ? " + " : n.kind == Kind::sub ? " - " : n.kind == Kind::mul ? " * " : " / ";
            return wrap(n.lhs, child_prec(n.lhs) < mine) + op + wrap(n.rhs, child_prec(n.rhs) <= mine);
        }
    }
    return {};
}

bool operator==(const CoefficientExpr& a, const CoefficientExpr& b) {
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    if (x.kind == CoefficientExpr::Kind::number) return x.value == y.value && std::signbit(x.value) == std::signbit(y.value);
    if ((x.lhs == nullptr) != (y.lhs == nullptr) || (x.rhs == nullptr) != (y.rhs == nullptr)) return false;
    if (x.lhs && !(CoefficientExpr(x.lhs) == CoefficientExpr(y.lhs))) return false;
    if (x.rhs && !(CoefficientExpr(x.rhs) == CoefficientExpr(y.rhs))) return false;
    return true;
}

CoefficientExpr parse_coefficient(std::string_view src) { return Parser(src).parse(); }

}  // namespace polysinc
