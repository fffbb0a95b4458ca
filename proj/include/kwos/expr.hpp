#pragma once

// Boundary data f given as text, e.g. "x^3 + y^2".
//
// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | var | func '(' expr ')' | '(' expr ')'
// var is one of x, y, z; func one of sin, cos, exp, sqrt, abs.
// '^' binds tighter than unary minus, so -x^2 == -(x^2).

#include "kwos/geometry.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kwos {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t offset);
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace expr_detail {
struct Node;
}

/// Immutable parsed expression; cheap to copy and safe to share across threads.
class BoundaryFunction {
public:
    [[nodiscard]] static BoundaryFunction parse(std::string_view src);
    [[nodiscard]] static BoundaryFunction constant(double value);

    /// Throws EvalError if a referenced variable is missing or the result is not finite.
    [[nodiscard]] double operator()(const Point& p) const;

    /// Number of coordinates needed: 0 if constant, 1 for x, 2 for y, 3 for z.
    [[nodiscard]] int variables_needed() const noexcept;

    /// Fully parenthesized form that parses back to the same tree.
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] const std::string& source() const noexcept { return source_; }

private:
    BoundaryFunction(std::shared_ptr<const expr_detail::Node> root, std::string source);

    std::shared_ptr<const expr_detail::Node> root_;
    std::string source_;
};

}  // namespace kwos
