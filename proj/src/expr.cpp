#include "kwos/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace kwos {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace expr_detail {

enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sin, Cos, Exp, Sqrt, Abs };

struct Node {
    Kind kind;
    double value = 0.0;
    int var = 0;
    Func func = Func::Sin;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;
};

}  // namespace expr_detail

namespace {

using expr_detail::Func;
using expr_detail::Kind;
using expr_detail::Node;
using NodePtr = std::unique_ptr<Node>;

NodePtr make_leaf(Kind kind, double value = 0.0, int var = 0) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->value = value;
    n->var = var;
    return n;
}

NodePtr make_node(Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip_ws();
        if (pos_ < src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return root;
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

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "', got end of input", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Kind::Add, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = make_node(Kind::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Kind::Mul, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = make_node(Kind::Div, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_node(Kind::Negate, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make_node(Kind::Pow, std::move(base), unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t begin = pos_;
        double value = 0.0;
        const auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value,
                                               std::chars_format::general);
        if (ec != std::errc{}) throw ParseError("malformed number", begin);
        pos_ = static_cast<std::size_t>(end - src_.data());
        return make_leaf(Kind::Number, value);
    }

    NodePtr identifier() {
        const std::size_t begin = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(begin, pos_ - begin);
        if (name == "x") return make_leaf(Kind::Variable, 0.0, 0);
        if (name == "y") return make_leaf(Kind::Variable, 0.0, 1);
        if (name == "z") return make_leaf(Kind::Variable, 0.0, 2);

        Func f;
        if (name == "sin") f = Func::Sin;
        else if (name == "cos") f = Func::Cos;
        else if (name == "exp") f = Func::Exp;
        else if (name == "sqrt") f = Func::Sqrt;
        else if (name == "abs") f = Func::Abs;
        else throw ParseError("unknown identifier '" + std::string(name) + "'", begin);

        expect('(');
        NodePtr arg = expr();
        expect(')');
        NodePtr call = make_node(Kind::Call, std::move(arg));
        call->func = f;
        return call;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double int_pow(double base, long long n) {
    const bool invert = n < 0;
    unsigned long long e = invert ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
    double result = 1.0;
    while (e) {
        if (e & 1ULL) result *= base;
        base *= base;
        e >>= 1;
    }
    return invert ? 1.0 / result : result;
}

double eval_node(const Node& n, const Point& p) {
    switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Variable:
        if (n.var >= p.dim()) {
            throw EvalError(std::string("variable '") + "xyz"[n.var] + "' not available in dimension " +
                            std::to_string(p.dim()));
        }
        return p[n.var];
    case Kind::Negate: return -eval_node(*n.lhs, p);
    case Kind::Add: return eval_node(*n.lhs, p) + eval_node(*n.rhs, p);
    case Kind::Sub: return eval_node(*n.lhs, p) - eval_node(*n.rhs, p);
    case Kind::Mul: return eval_node(*n.lhs, p) * eval_node(*n.rhs, p);
    case Kind::Div: return eval_node(*n.lhs, p) / eval_node(*n.rhs, p);
    case Kind::Pow: {
        const double base = eval_node(*n.lhs, p);
        const double e = eval_node(*n.rhs, p);
        if (e == std::trunc(e) && std::abs(e) < 1e15) return int_pow(base, static_cast<long long>(e));
        return std::pow(base, e);
    }
    case Kind::Call: {
        const double a = eval_node(*n.lhs, p);
        switch (n.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Sqrt:
            if (a < 0.0) throw EvalError("sqrt of a negative number");
            return std::sqrt(a);
        case Func::Abs: return std::abs(a);
        }
    }
    }
    throw EvalError("corrupt expression tree");
}

int max_var(const Node& n) {
    int v = n.kind == Kind::Variable ? n.var + 1 : 0;
    if (n.lhs) v = std::max(v, max_var(*n.lhs));
    if (n.rhs) v = std::max(v, max_var(*n.rhs));
    return v;
}

void print(const Node& n, std::string& out) {
    static constexpr const char* kFuncNames[] = {"sin", "cos", "exp", "sqrt", "abs"};
    auto binary = [&](const char* op) {
        out += '(';
        print(*n.lhs, out);
        out += op;
        print(*n.rhs, out);
        out += ')';
    };
    switch (n.kind) {
    case Kind::Number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        break;
    }
    case Kind::Variable: out += "xyz"[n.var]; break;
    case Kind::Negate:
        out += "(-";
        print(*n.lhs, out);
        out += ')';
        break;
    case Kind::Add: binary(" + "); break;
    case Kind::Sub: binary(" - "); break;
    case Kind::Mul: binary(" * "); break;
    case Kind::Div: binary(" / "); break;
    case Kind::Pow: binary(" ^ "); break;
    case Kind::Call:
        out += kFuncNames[static_cast<int>(n.func)];
        out += '(';
        print(*n.lhs, out);
        out += ')';
        break;
    }
}

}  // namespace

BoundaryFunction::BoundaryFunction(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

BoundaryFunction BoundaryFunction::parse(std::string_view src) {
    return BoundaryFunction(Parser(src).parse(), std::string(src));
}

BoundaryFunction BoundaryFunction::constant(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return BoundaryFunction(make_leaf(Kind::Number, value), buf);
}

double BoundaryFunction::operator()(const Point& p) const {
    const double v = eval_node(*root_, p);
    if (!std::isfinite(v)) throw EvalError("boundary function '" + source_ + "' is not finite at " + kwos::to_string(p));
    return v;
}

int BoundaryFunction::variables_needed() const noexcept { return max_var(*root_); }

std::string BoundaryFunction::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

}  // namespace kwos
