#include "tsvolterra/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace tsv {

namespace {

enum class Func { Exp, Log, Sin, Cos, Sqrt, Abs, Pow };

const char* func_name(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Sqrt: return "sqrt";
        case Func::Abs: return "abs";
        case Func::Pow: return "pow";
    }
    return "?";
}

} // namespace

struct Expr::Node {
    enum class Kind { Num, VarT, VarS, Add, Sub, Mul, Div, Pow, Neg, Call };
    Kind kind;
    double value = 0.0;
    Func func = Func::Exp;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs; // second call argument for pow(,)
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Node = Expr::Node;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) {
            fail("unexpected trailing input");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ParseError,
                    "parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
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
            fail(std::string("expected '") + c + "'");
        }
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        auto lhs = parse_term();
        while (true) {
            if (accept('+')) {
                lhs = make(Node::Kind::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = make(Node::Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        auto lhs = parse_factor();
        while (true) {
            if (accept('*')) {
                lhs = make(Node::Kind::Mul, lhs, parse_factor());
            } else if (accept('/')) {
                lhs = make(Node::Kind::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        if (accept('-')) {
            return make(Node::Kind::Neg, parse_factor());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_atom();
        if (accept('^')) {
            // right associative; exponent may carry a unary minus
            return make(Node::Kind::Pow, base, parse_factor());
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail("unexpected end of input");
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_name();
        }
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            expect(')');
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        // scan the token first; src_ need not be null-terminated
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                ++pos_;
            }
            std::size_t exp_start = pos_;
            digits();
            if (pos_ == exp_start) {
                pos_ = mark; // not an exponent after all
            }
        }
        std::string token(src_.substr(start, pos_ - start));
        char* end = nullptr;
        double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || token.empty()) {
            pos_ = start;
            fail("malformed number");
        }
        auto n = make(Node::Kind::Num);
        const_cast<Node&>(*n).value = v;
        return n;
    }

    NodePtr parse_name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") {
            return make(Node::Kind::VarT);
        }
        if (name == "s") {
            return make(Node::Kind::VarS);
        }
        for (Func f : {Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Sqrt,
                       Func::Abs, Func::Pow}) {
            if (name == func_name(f)) {
                return parse_call(f);
            }
        }
        pos_ = start;
        throw Error(ErrorCode::UnknownIdentifier,
                    "unknown identifier \"" + std::string(name) + "\" at offset " +
                        std::to_string(start));
    }

    NodePtr parse_call(Func f) {
        expect('(');
        auto arg = parse_expr();
        NodePtr second;
        if (f == Func::Pow) {
            expect(',');
            second = parse_expr();
        } else if (peek() == ',') {
            fail(std::string(func_name(f)) + " takes one argument");
        }
        expect(')');
        auto n = make(Node::Kind::Call, arg, second);
        const_cast<Node&>(*n).func = f;
        return n;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, double t, const std::optional<double>& s) {
    switch (n.kind) {
        case Node::Kind::Num: return n.value;
        case Node::Kind::VarT: return t;
        case Node::Kind::VarS:
            if (!s) {
                throw Error(ErrorCode::UnboundVariable,
                            "expression references s but no s binding was given");
            }
            return *s;
        case Node::Kind::Add: return eval_node(*n.lhs, t, s) + eval_node(*n.rhs, t, s);
        case Node::Kind::Sub: return eval_node(*n.lhs, t, s) - eval_node(*n.rhs, t, s);
        case Node::Kind::Mul: return eval_node(*n.lhs, t, s) * eval_node(*n.rhs, t, s);
        case Node::Kind::Div: return eval_node(*n.lhs, t, s) / eval_node(*n.rhs, t, s);
        case Node::Kind::Pow:
            return std::pow(eval_node(*n.lhs, t, s), eval_node(*n.rhs, t, s));
        case Node::Kind::Neg: return -eval_node(*n.lhs, t, s);
        case Node::Kind::Call: {
            double a = eval_node(*n.lhs, t, s);
            switch (n.func) {
                case Func::Exp: return std::exp(a);
                case Func::Log:
                    if (a < 0) {
                        throw Error(ErrorCode::DomainError, "log of negative value");
                    }
                    return std::log(a);
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Sqrt:
                    if (a < 0) {
                        throw Error(ErrorCode::DomainError, "sqrt of negative value");
                    }
                    return std::sqrt(a);
                case Func::Abs: return std::fabs(a);
                case Func::Pow: return std::pow(a, eval_node(*n.rhs, t, s));
            }
            break;
        }
    }
    throw Error(ErrorCode::ParseError, "corrupt expression node");
}

bool refs_s(const Node& n) {
    if (n.kind == Node::Kind::VarS) {
        return true;
    }
    return (n.lhs && refs_s(*n.lhs)) || (n.rhs && refs_s(*n.rhs));
}

void print_node(const Node& n, std::ostream& os) {
    switch (n.kind) {
        case Node::Kind::Num: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.value;
            os << tmp.str();
            return;
        }
        case Node::Kind::VarT: os << 't'; return;
        case Node::Kind::VarS: os << 's'; return;
        case Node::Kind::Neg:
            os << "(-";
            print_node(*n.lhs, os);
            os << ')';
            return;
        case Node::Kind::Call:
            os << func_name(n.func) << '(';
            print_node(*n.lhs, os);
            if (n.rhs) {
                os << ", ";
                print_node(*n.rhs, os);
            }
            os << ')';
            return;
        default: break;
    }
    const char* op = n.kind == Node::Kind::Add   ? " + "
                     : n.kind == Node::Kind::Sub ? " - "
                     : n.kind == Node::Kind::Mul ? " * "
                     : n.kind == Node::Kind::Div ? " / "
                                                 : " ^ ";
    os << '(';
    print_node(*n.lhs, os);
    os << op;
    print_node(*n.rhs, os);
    os << ')';
}

} // namespace

Expr Expr::parse(std::string_view src) {
    return Expr(Parser(src).run());
}

double Expr::eval(double t, std::optional<double> s) const {
    double v = eval_node(*root_, t, s);
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::NumericOverflow, "expression evaluated to a non-finite value");
    }
    return v;
}

bool Expr::references_s() const {
    return refs_s(*root_);
}

std::string Expr::print() const {
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

} // namespace tsv
