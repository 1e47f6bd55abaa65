#include "multikit/expr.hpp"

#include "multikit/errors.hpp"

#include <cctype>
#include <sstream>

namespace multikit {

ParseError::ParseError(std::string message, std::size_t offset_,
                       std::vector<std::string> expected_)
    : std::runtime_error(std::move(message)), offset(offset_),
      expected(std::move(expected_)) {}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_union();
        skip_ws();
        if (pos_ != text_.size())
            fail({"operator", "end of input"});
        return e;
    }

private:
    ExprPtr parse_union() {
        ExprPtr left = parse_inter();
        while (accept('|'))
            left = binary(BinaryOp::Union, left, parse_inter());
        return left;
    }

    ExprPtr parse_inter() {
        ExprPtr left = parse_addsub();
        while (accept('&'))
            left = binary(BinaryOp::Intersection, left, parse_addsub());
        return left;
    }

    ExprPtr parse_addsub() {
        ExprPtr left = parse_muldiv();
        while (true) {
            if (accept('+'))
                left = binary(BinaryOp::Add, left, parse_muldiv());
            else if (accept('-'))
                left = binary(BinaryOp::Subtract, left, parse_muldiv());
            else
                return left;
        }
    }

    ExprPtr parse_muldiv() {
        ExprPtr left = parse_unary();
        while (true) {
            if (accept('*'))
                left = binary(BinaryOp::Multiply, left, parse_unary());
            else if (accept('/'))
                left = binary(BinaryOp::Divide, left, parse_unary());
            else
                return left;
        }
    }

    ExprPtr parse_unary() {
        if (accept('-')) {
            ExprPtr child = parse_unary();
            return std::make_shared<ExprAst>(ExprAst{ExprAst::Unary{UnaryOp::Negate, child}});
        }
        return parse_atom();
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            fail({"identifier", "number", "'('"});
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_union();
            skip_ws();
            if (!accept(')'))
                fail({"')'"});
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        fail({"identifier", "number", "'('"});
    }

    ExprPtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::make_shared<ExprAst>(
            ExprAst{ExprAst::Identifier{text_.substr(start, pos_ - start)}});
    }

    ExprPtr parse_number() {
        std::size_t start = pos_;
        std::size_t consumed = 0;
        double value;
        try {
            value = std::stod(text_.substr(start), &consumed);
        } catch (const std::exception&) {
            fail({"number"});
        }
        pos_ = start + consumed;
        return std::make_shared<ExprAst>(ExprAst{ExprAst::Number{value}});
    }

    static ExprPtr binary(BinaryOp op, ExprPtr l, ExprPtr r) {
        return std::make_shared<ExprAst>(ExprAst{ExprAst::Binary{op, l, r}});
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        skip_ws();
        std::ostringstream msg;
        msg << "syntax error at offset " << pos_ << ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            msg << (i ? " or " : "") << expected[i];
        throw ParseError(msg.str(), pos_, std::move(expected));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

const char* op_symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::Union: return "|";
    case BinaryOp::Intersection: return "&";
    case BinaryOp::Add: return "+";
    case BinaryOp::Subtract: return "-";
    case BinaryOp::Multiply: return "*";
    case BinaryOp::Divide: return "/";
    }
    return "?";
}

} // namespace

ExprPtr parse(const std::string& text) {
    return Parser(text).run();
}

std::string pretty_print(const ExprAst& ast) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExprAst::Identifier>) {
                return node.name;
            } else if constexpr (std::is_same_v<T, ExprAst::Number>) {
                std::ostringstream s;
                s.precision(17);
                s << node.value;
                return s.str();
            } else if constexpr (std::is_same_v<T, ExprAst::Unary>) {
                return "(-" + pretty_print(*node.child) + ")";
            } else {
                return "(" + pretty_print(*node.left) + " " + op_symbol(node.op) + " " +
                       pretty_print(*node.right) + ")";
            }
        },
        ast.node);
}

bool ast_equal(const ExprAst& a, const ExprAst& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* ia = std::get_if<ExprAst::Identifier>(&a.node))
        return ia->name == std::get<ExprAst::Identifier>(b.node).name;
    if (const auto* na = std::get_if<ExprAst::Number>(&a.node))
        return na->value == std::get<ExprAst::Number>(b.node).value;
    if (const auto* ua = std::get_if<ExprAst::Unary>(&a.node)) {
        const auto& ub = std::get<ExprAst::Unary>(b.node);
        return ua->op == ub.op && ast_equal(*ua->child, *ub.child);
    }
    const auto& ba = std::get<ExprAst::Binary>(a.node);
    const auto& bb = std::get<ExprAst::Binary>(b.node);
    return ba.op == bb.op && ast_equal(*ba.left, *bb.left) && ast_equal(*ba.right, *bb.right);
}

void Environment::bind(const std::string& name, Mset value) {
    for (const auto& [n, v] : bindings_)
        if (!std::holds_alternative<Mset>(v))
            throw std::invalid_argument("environment mixes msets and mfunctions");
    bindings_.insert_or_assign(name, Value(std::move(value)));
}

void Environment::bind(const std::string& name, MFunction value) {
    for (const auto& [n, v] : bindings_) {
        const auto* f = std::get_if<MFunction>(&v);
        if (!f)
            throw std::invalid_argument("environment mixes msets and mfunctions");
        if (!(f->grid() == value.grid()))
            throw AlignmentError("bound functions must share one grid");
    }
    bindings_.insert_or_assign(name, Value(std::move(value)));
}

const Value* Environment::lookup(const std::string& name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
}

Value Environment::constant(double v) const {
    if (bindings_.empty())
        throw std::invalid_argument("numeric literal in an empty environment");
    const Value& any = bindings_.begin()->second;
    if (const auto* f = std::get_if<MFunction>(&any))
        return MFunction::constant(v, f->grid());
    // uniform mset over the union of all bound supports
    Mset::Entries e;
    if (v != 0.0) {
        for (const auto& [name, value] : bindings_)
            for (const auto& [x, m] : std::get<Mset>(value).entries())
                e.emplace(x, v);
    }
    return Mset(std::move(e));
}

namespace {

Value apply_binary(BinaryOp op, const Value& l, const Value& r) {
    if (l.index() != r.index())
        throw AlignmentError("cannot mix msets and mfunctions in one expression");
    auto mset_op = [](BinaryOp o) {
        switch (o) {
        case BinaryOp::Union: return MsetOp::Union;
        case BinaryOp::Intersection: return MsetOp::Intersection;
        case BinaryOp::Add: return MsetOp::Sum;
        case BinaryOp::Subtract: return MsetOp::DiffSigned;
        case BinaryOp::Multiply: return MsetOp::Product;
        default: throw std::logic_error("not an elementwise op");
        }
    };
    if (const auto* a = std::get_if<Mset>(&l)) {
        const auto& b = std::get<Mset>(r);
        if (op == BinaryOp::Divide)
            return quotient(*a, b);
        return combine(mset_op(op), *a, b);
    }
    const auto& a = std::get<MFunction>(l);
    const auto& b = std::get<MFunction>(r);
    if (op == BinaryOp::Divide)
        return pointwise_quotient(a, b);
    return pointwise(mset_op(op), a, b);
}

} // namespace

Value eval(const ExprAst& ast, const Environment& env) {
    return std::visit(
        [&](const auto& node) -> Value {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExprAst::Identifier>) {
                const Value* v = env.lookup(node.name);
                if (!v)
                    throw std::invalid_argument("unbound identifier: " + node.name);
                return *v;
            } else if constexpr (std::is_same_v<T, ExprAst::Number>) {
                return env.constant(node.value);
            } else if constexpr (std::is_same_v<T, ExprAst::Unary>) {
                Value child = eval(*node.child, env);
                if (const auto* a = std::get_if<Mset>(&child))
                    return complement(*a);
                return complement(std::get<MFunction>(child));
            } else {
                return apply_binary(node.op, eval(*node.left, env), eval(*node.right, env));
            }
        },
        ast.node);
}

} // namespace multikit
