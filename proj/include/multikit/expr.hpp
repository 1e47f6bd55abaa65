#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "multikit/mfunction.hpp"
#include "multikit/mset.hpp"

namespace multikit {

// Hybrid set/arithmetic expression grammar (loosest binding first):
//   expr   := union
//   union  := inter ('|' inter)*
//   inter  := addsub ('&' addsub)*
//   addsub := muldiv (('+'|'-') muldiv)*
//   muldiv := unary (('*'|'/') unary)*
//   unary  := '-' unary | atom
//   atom   := IDENT | NUMBER | '(' expr ')'
// '|' is union (max), '&' is intersection (min), unary '-' is the complement.

enum class BinaryOp { Union, Intersection, Add, Subtract, Multiply, Divide };
enum class UnaryOp { Negate };

struct ExprAst;
using ExprPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
    struct Identifier { std::string name; };
    struct Number { double value; };
    struct Unary { UnaryOp op; ExprPtr child; };
    struct Binary { BinaryOp op; ExprPtr left, right; };

    std::variant<Identifier, Number, Unary, Binary> node;
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    std::vector<std::string> expected;
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);
};

ExprPtr parse(const std::string& text);

// Fully parenthesized rendering; parses back to an identical tree.
std::string pretty_print(const ExprAst& ast);

bool ast_equal(const ExprAst& a, const ExprAst& b);

using Value = std::variant<Mset, MFunction>;

// Name bindings for evaluation. All bound values must be of one kind and
// mutually aligned; numeric literals become constants over that alignment.
class Environment {
public:
    void bind(const std::string& name, Mset value);
    void bind(const std::string& name, MFunction value);

    const Value* lookup(const std::string& name) const;
    Value constant(double v) const; // aligned constant for numeric literals

private:
    std::map<std::string, Value> bindings_;
};

Value eval(const ExprAst& ast, const Environment& env);

} // namespace multikit
