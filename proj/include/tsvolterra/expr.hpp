#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "tsvolterra/errors.hpp"

namespace tsv {

// Arithmetic expressions in t and (optionally) s. Grammar:
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | power
//   power   := atom ('^' factor)?          // right associative
//   atom    := number | 't' | 's' | func '(' args ')' | '(' expr ')'
// Functions: exp log sin cos sqrt abs pow. Unknown identifiers are
// rejected at parse time.
class Expr {
public:
    static Expr parse(std::string_view src);

    // s may be absent; an expression referencing s then throws
    // UnboundVariable. log/sqrt of a negative throws DomainError; a
    // non-finite result throws NumericOverflow.
    double eval(double t, std::optional<double> s = std::nullopt) const;

    bool references_s() const;

    // Canonical fully parenthesized form; parse(print()) reproduces
    // the same AST.
    std::string print() const;

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace tsv
