#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symroot {

/// Syntax error raised by ScalarField::parse; `offset` is the byte position
/// of the offending character in the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A position-dependent real-valued function over the variables x1, x2, x3,
/// backed by an immutable expression tree. Construction goes through parse()
/// or the arithmetic builders below; evaluation is pure and reentrant.
///
/// Grammar: numeric literals (decimal, optional exponent), x1|x2|x3,
/// + - * / ^ with conventional precedence, parentheses, unary minus, and the
/// functions sin, cos, tan, tanh, sqrt, exp, abs. `^` takes a literal integer
/// exponent, binds tighter than unary minus and associates to the right.
class ScalarField {
public:
    enum class Func { Sin, Cos, Tan, Tanh, Sqrt, Exp, Abs };

    static ScalarField parse(std::string_view text);
    static ScalarField constant(double value) { return ScalarField(Node::number(value)); }
    static ScalarField variable(int index) {
        if (index < 0 || index > 2)
            throw std::invalid_argument("ScalarField: variable index must be 0, 1 or 2");
        return ScalarField(Node::variable(index));
    }

    /// Evaluates the tree at position x. NaN and infinity propagate; a tuple
    /// that does not cover every free variable is an error.
    double evaluate(std::span<const double> x) const {
        if (static_cast<int>(x.size()) < arity_)
            throw std::invalid_argument("ScalarField: position tuple has " +
                                        std::to_string(x.size()) + " entries but x" +
                                        std::to_string(arity_) + " is used");
        return eval_node(*root_, x);
    }
    double operator()(std::span<const double> x) const { return evaluate(x); }
    double operator()(std::initializer_list<double> x) const {
        return evaluate(std::span<const double>(x.begin(), x.size()));
    }

    /// Number of position variables needed: 1 + highest variable index used
    /// (0 for constants).
    int arity() const { return arity_; }

    bool uses_variable(int index) const { return uses_node(*root_, index); }

    /// Exact partial derivative with respect to x_{index+1}, as a new field
    /// built by chain-ruling the tree.
    ScalarField derivative(int index) const { return ScalarField(diff_node(root_, index)); }

    /// Canonical printed form; parsing it back yields a structurally
    /// identical tree.
    std::string to_string() const { return print_node(*root_); }

    friend bool operator==(const ScalarField& a, const ScalarField& b) {
        return equal_nodes(*a.root_, *b.root_);
    }

    friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
        return ScalarField(Node::binary(Kind::Add, a.root_, b.root_));
    }
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
        return ScalarField(Node::binary(Kind::Sub, a.root_, b.root_));
    }
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
        return ScalarField(Node::binary(Kind::Mul, a.root_, b.root_));
    }
    friend ScalarField operator/(const ScalarField& a, const ScalarField& b) {
        return ScalarField(Node::binary(Kind::Div, a.root_, b.root_));
    }
    friend ScalarField operator+(double a, const ScalarField& b) { return constant(a) + b; }
    friend ScalarField operator-(double a, const ScalarField& b) { return constant(a) - b; }
    friend ScalarField operator*(double a, const ScalarField& b) { return constant(a) * b; }
    friend ScalarField operator+(const ScalarField& a, double b) { return a + constant(b); }
    friend ScalarField operator-(const ScalarField& a, double b) { return a - constant(b); }
    friend ScalarField operator*(const ScalarField& a, double b) { return a * constant(b); }
    friend ScalarField operator/(const ScalarField& a, double b) { return a / constant(b); }
    friend ScalarField operator-(const ScalarField& a) {
        return ScalarField(Node::negate(a.root_));
    }

    friend ScalarField pow(const ScalarField& base, int exponent) {
        return ScalarField(Node::power(base.root_, exponent));
    }
    friend ScalarField apply(Func f, const ScalarField& arg) {
        return ScalarField(Node::call(f, arg.root_));
    }
    friend ScalarField sin(const ScalarField& a) { return apply(Func::Sin, a); }
    friend ScalarField cos(const ScalarField& a) { return apply(Func::Cos, a); }
    friend ScalarField tan(const ScalarField& a) { return apply(Func::Tan, a); }
    friend ScalarField tanh(const ScalarField& a) { return apply(Func::Tanh, a); }
    friend ScalarField sqrt(const ScalarField& a) { return apply(Func::Sqrt, a); }
    friend ScalarField exp(const ScalarField& a) { return apply(Func::Exp, a); }
    friend ScalarField abs(const ScalarField& a) { return apply(Func::Abs, a); }

private:
    enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        Kind kind;
        double value = 0.0; // Number
        int var_index = 0; // Variable
        int exponent = 0;   // Pow
        Func func = Func::Sin;
        NodePtr lhs, rhs;

        static NodePtr number(double v) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Number;
            n->value = v;
            return n;
        }
        static NodePtr variable(int index) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Variable;
            n->var_index = index;
            return n;
        }
        static NodePtr negate(NodePtr child) {
            if (child->kind == Kind::Number) return number(-child->value);
            if (child->kind == Kind::Negate) return child->lhs;
            auto n = std::make_shared<Node>();
            n->kind = Kind::Negate;
            n->lhs = std::move(child);
            return n;
        }
        static NodePtr binary(Kind kind, NodePtr a, NodePtr b) {
            if (a->kind == Kind::Number && b->kind == Kind::Number) {
                switch (kind) {
                    case Kind::Add: return number(a->value + b->value);
                    case Kind::Sub: return number(a->value - b->value);
                    case Kind::Mul: return number(a->value * b->value);
                    case Kind::Div: return number(a->value / b->value);
                    default: break;
                }
            }
            if (kind == Kind::Add) {
                if (is_number(*a, 0.0)) return b;
                if (is_number(*b, 0.0)) return a;
            } else if (kind == Kind::Sub) {
                if (is_number(*b, 0.0)) return a;
                if (is_number(*a, 0.0)) return negate(b);
            } else if (kind == Kind::Mul) {
                if (is_number(*a, 0.0) || is_number(*b, 0.0)) return number(0.0);
                if (is_number(*a, 1.0)) return b;
                if (is_number(*b, 1.0)) return a;
            } else if (kind == Kind::Div) {
                if (is_number(*a, 0.0)) return number(0.0);
                if (is_number(*b, 1.0)) return a;
            }
            auto n = std::make_shared<Node>();
            n->kind = kind;
            n->lhs = std::move(a);
            n->rhs = std::move(b);
            return n;
        }
        static NodePtr power(NodePtr base, int exponent) {
            if (exponent == 0) return number(1.0);
            if (exponent == 1) return base;
            if (base->kind == Kind::Number) return number(int_pow(base->value, exponent));
            auto n = std::make_shared<Node>();
            n->kind = Kind::Pow;
            n->exponent = exponent;
            n->lhs = std::move(base);
            return n;
        }
        static NodePtr call(Func f, NodePtr arg) {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Call;
            n->func = f;
            n->lhs = std::move(arg);
            return n;
        }
        static bool is_number(const Node& n, double v) {
            return n.kind == Kind::Number && n.value == v;
        }
        static double int_pow(double base, int exponent) {
            if (exponent < 0) return 1.0 / int_pow(base, -exponent);
            double result = 1.0;
            while (exponent > 0) {
                if (exponent & 1) result *= base;
                base *= base;
                exponent >>= 1;
            }
            return result;
        }
    };

    explicit ScalarField(NodePtr root) : root_(std::move(root)) {
        arity_ = compute_arity(*root_);
    }

    static int compute_arity(const Node& n) {
        switch (n.kind) {
            case Kind::Number: return 0;
            case Kind::Variable: return n.var_index + 1;
            default: {
                int a = n.lhs ? compute_arity(*n.lhs) : 0;
                if (n.rhs) a = std::max(a, compute_arity(*n.rhs));
                return a;
            }
        }
    }

    static bool uses_node(const Node& n, int index) {
        if (n.kind == Kind::Variable) return n.var_index == index;
        if (n.lhs && uses_node(*n.lhs, index)) return true;
        return n.rhs && uses_node(*n.rhs, index);
    }

    static double eval_node(const Node& n, std::span<const double> x) {
        switch (n.kind) {
            case Kind::Number: return n.value;
            case Kind::Variable: return x[static_cast<std::size_t>(n.var_index)];
            case Kind::Negate: return -eval_node(*n.lhs, x);
            case Kind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
            case Kind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
            case Kind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
            case Kind::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
            case Kind::Pow: return Node::int_pow(eval_node(*n.lhs, x), n.exponent);
            case Kind::Call: {
                const double a = eval_node(*n.lhs, x);
                switch (n.func) {
                    case Func::Sin: return std::sin(a);
                    case Func::Cos: return std::cos(a);
                    case Func::Tan: return std::tan(a);
                    case Func::Tanh: return std::tanh(a);
                    case Func::Sqrt: return std::sqrt(a);
                    case Func::Exp: return std::exp(a);
                    case Func::Abs: return std::abs(a);
                }
            }
        }
        return 0.0; // unreachable
    }

    static bool equal_nodes(const Node& a, const Node& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
            case Kind::Number: return a.value == b.value;
            case Kind::Variable: return a.var_index == b.var_index;
            case Kind::Pow:
                return a.exponent == b.exponent && equal_nodes(*a.lhs, *b.lhs);
            case Kind::Call:
                return a.func == b.func && equal_nodes(*a.lhs, *b.lhs);
            case Kind::Negate: return equal_nodes(*a.lhs, *b.lhs);
            default: return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
        }
    }

    static NodePtr diff_node(const NodePtr& n, int index) {
        switch (n->kind) {
            case Kind::Number: return Node::number(0.0);
            case Kind::Variable: return Node::number(n->var_index == index ? 1.0 : 0.0);
            case Kind::Negate: return Node::negate(diff_node(n->lhs, index));
            case Kind::Add:
                return Node::binary(Kind::Add, diff_node(n->lhs, index), diff_node(n->rhs, index));
            case Kind::Sub:
                return Node::binary(Kind::Sub, diff_node(n->lhs, index), diff_node(n->rhs, index));
            case Kind::Mul: {
                auto left = Node::binary(Kind::Mul, diff_node(n->lhs, index), n->rhs);
                auto right = Node::binary(Kind::Mul, n->lhs, diff_node(n->rhs, index));
                return Node::binary(Kind::Add, std::move(left), std::move(right));
            }
            case Kind::Div: {
                auto num = Node::binary(
                    Kind::Sub, Node::binary(Kind::Mul, diff_node(n->lhs, index), n->rhs),
                    Node::binary(Kind::Mul, n->lhs, diff_node(n->rhs, index)));
                return Node::binary(Kind::Div, std::move(num), Node::power(n->rhs, 2));
            }
            case Kind::Pow: {
                auto scaled = Node::binary(Kind::Mul, Node::number(n->exponent),
                                           Node::power(n->lhs, n->exponent - 1));
                return Node::binary(Kind::Mul, std::move(scaled), diff_node(n->lhs, index));
            }
            case Kind::Call: {
                auto inner = diff_node(n->lhs, index);
                NodePtr outer;
                switch (n->func) {
                    case Func::Sin: outer = Node::call(Func::Cos, n->lhs); break;
                    case Func::Cos:
                        outer = Node::negate(Node::call(Func::Sin, n->lhs));
                        break;
                    case Func::Tan:
                        outer = Node::binary(Kind::Div, Node::number(1.0),
                                             Node::power(Node::call(Func::Cos, n->lhs), 2));
                        break;
                    case Func::Tanh:
                        outer = Node::binary(Kind::Sub, Node::number(1.0),
                                             Node::power(Node::call(Func::Tanh, n->lhs), 2));
                        break;
                    case Func::Sqrt:
                        outer = Node::binary(
                            Kind::Div, Node::number(1.0),
                            Node::binary(Kind::Mul, Node::number(2.0),
                                         Node::call(Func::Sqrt, n->lhs)));
                        break;
                    case Func::Exp: outer = Node::call(Func::Exp, n->lhs); break;
                    case Func::Abs:
                        // d|u| = u/|u| * du, undefined at u = 0.
                        outer = Node::binary(Kind::Div, n->lhs, Node::call(Func::Abs, n->lhs));
                        break;
                }
                return Node::binary(Kind::Mul, std::move(outer), std::move(inner));
            }
        }
        return Node::number(0.0); // unreachable
    }

    static std::string print_number(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    static std::string_view func_name(Func f) {
        switch (f) {
            case Func::Sin: return "sin";
            case Func::Cos: return "cos";
            case Func::Tan: return "tan";
            case Func::Tanh: return "tanh";
            case Func::Sqrt: return "sqrt";
            case Func::Exp: return "exp";
            case Func::Abs: return "abs";
        }
        return "";
    }

    static std::string print_node(const Node& n) {
        switch (n.kind) {
            case Kind::Number: return print_number(n.value);
            case Kind::Variable: return "x" + std::to_string(n.var_index + 1);
            case Kind::Negate: return "-" + print_operand(*n.lhs);
            case Kind::Add: return "(" + print_node(*n.lhs) + " + " + print_node(*n.rhs) + ")";
            case Kind::Sub: return "(" + print_node(*n.lhs) + " - " + print_node(*n.rhs) + ")";
            case Kind::Mul: return "(" + print_node(*n.lhs) + " * " + print_node(*n.rhs) + ")";
            case Kind::Div: return "(" + print_node(*n.lhs) + " / " + print_node(*n.rhs) + ")";
            case Kind::Pow:
                return print_operand(*n.lhs) + "^" + std::to_string(n.exponent);
            case Kind::Call:
                return std::string(func_name(n.func)) + "(" + print_node(*n.lhs) + ")";
        }
        return "";
    }

    // Wraps anything that would not re-parse as a single atom.
    static std::string print_operand(const Node& n) {
        const bool atomic = (n.kind == Kind::Variable) || (n.kind == Kind::Call) ||
                            (n.kind == Kind::Number && n.value >= 0.0) ||
                            n.kind == Kind::Add || n.kind == Kind::Sub ||
                            n.kind == Kind::Mul || n.kind == Kind::Div;
        return atomic ? print_node(n) : "(" + print_node(n) + ")";
    }

    class Parser;

    NodePtr root_;
    int arity_ = 0;
};

class ScalarField::Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        if (text_.empty()) throw ParseError("empty expression", 0);
        NodePtr root = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr left = parse_term();
        while (true) {
            if (consume('+')) {
                left = Node::binary(Kind::Add, std::move(left), parse_term());
            } else if (consume('-')) {
                left = Node::binary(Kind::Sub, std::move(left), parse_term());
            } else {
                return left;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr left = parse_unary();
        while (true) {
            if (consume('*')) {
                left = Node::binary(Kind::Mul, std::move(left), parse_unary());
            } else if (consume('/')) {
                left = Node::binary(Kind::Div, std::move(left), parse_unary());
            } else {
                return left;
            }
        }
    }

    // `^` binds tighter than unary minus: -x^2 is -(x^2). A minus in front of
    // a bare literal folds into the literal so that printing round-trips.
    NodePtr parse_unary() {
        if (consume('-')) {
            NodePtr operand = parse_unary();
            return Node::negate(std::move(operand));
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) {
            const int exponent = parse_int_exponent();
            return Node::power(std::move(base), exponent);
        }
        return base;
    }

    // Right-associative integer exponent chain: a^2^3 = a^(2^3).
    int parse_int_exponent() {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected integer exponent after '^'", pos_);
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == '.' ||
                                    text_[pos_] == 'e' || text_[pos_] == 'E'))
            throw ParseError("exponent must be an integer", pos_);
        int result = static_cast<int>(negative ? -value : value);
        if (consume('^')) {
            const int upper = parse_int_exponent();
            if (upper < 0) throw ParseError("negative exponent in exponent chain", start);
            long folded = 1;
            for (int i = 0; i < upper; ++i) {
                folded *= result;
                if (folded > 1000 || folded < -1000)
                    throw ParseError("exponent too large", start);
            }
            result = static_cast<int>(folded);
        }
        return result;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
            if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
                pos_ = probe;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        double value = 0.0;
        const auto result =
            std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (result.ec != std::errc() || result.ptr != text_.data() + pos_)
            throw ParseError("malformed numeric literal", start);
        return Node::number(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x1") return Node::variable(0);
        if (name == "x2") return Node::variable(1);
        if (name == "x3") return Node::variable(2);
        Func f;
        if (name == "sin") f = Func::Sin;
        else if (name == "cos") f = Func::Cos;
        else if (name == "tan") f = Func::Tan;
        else if (name == "tanh") f = Func::Tanh;
        else if (name == "sqrt") f = Func::Sqrt;
        else if (name == "exp") f = Func::Exp;
        else if (name == "abs") f = Func::Abs;
        else
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        NodePtr arg = parse_expr();
        if (!consume(')')) throw ParseError("expected ')'", pos_);
        return Node::call(f, std::move(arg));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline ScalarField ScalarField::parse(std::string_view text) {
    Parser parser(text);
    return ScalarField(parser.run());
}

/// Scale-aware default step for the central differences below.
inline double default_fd_step(std::span<const double> x) {
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    return 1e-5 * scale;
}

/// Central finite difference (f(x+h e_i) - f(x-h e_i)) / (2h).
inline double partial(const ScalarField& f, int index, std::span<const double> x,
                      double step = 0.0) {
    if (step < 0.0) throw std::invalid_argument("partial: step must be positive");
    const double h = step > 0.0 ? step : default_fd_step(x);
    std::array<double, 3> plus{0, 0, 0}, minus{0, 0, 0};
    for (std::size_t i = 0; i < x.size() && i < 3; ++i) plus[i] = minus[i] = x[i];
    plus[static_cast<std::size_t>(index)] += h;
    minus[static_cast<std::size_t>(index)] -= h;
    const std::size_t arity = std::max<std::size_t>(x.size(), index + 1);
    return (f.evaluate({plus.data(), arity}) - f.evaluate({minus.data(), arity})) / (2.0 * h);
}

/// Mixed second partial via the standard 4-point cross stencil; i == j falls
/// back to the 3-point second difference. Second differences divide by h^2,
/// so the default step is a decade wider than for first differences to keep
/// rounding noise at the 1e-8 level.
inline double mixed_partial(const ScalarField& f, int i, int j, std::span<const double> x,
                            double step = 0.0) {
    if (step < 0.0) throw std::invalid_argument("mixed_partial: step must be positive");
    const double h = step > 0.0 ? step : 10.0 * default_fd_step(x);
    std::array<double, 3> probe{0, 0, 0};
    for (std::size_t k = 0; k < x.size() && k < 3; ++k) probe[k] = x[k];
    const std::size_t arity =
        std::max({x.size(), static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1});
    auto at = [&](double di, double dj) {
        std::array<double, 3> p = probe;
        p[static_cast<std::size_t>(i)] += di;
        p[static_cast<std::size_t>(j)] += dj;
        return f.evaluate({p.data(), arity});
    };
    if (i == j) {
        return (at(h, 0.0) - 2.0 * at(0.0, 0.0) + at(-h, 0.0)) / (h * h);
    }
    return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

} // namespace symroot
