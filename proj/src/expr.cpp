#include "aer/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace aer {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : ConfigError("parse error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace {

using Kind = ExprNode::Kind;
using NodePtr = std::shared_ptr<const ExprNode>;

struct FuncEntry {
    const char* name;
    Func func;
};

constexpr std::array<FuncEntry, 8> kFuncs{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"tan", Func::tan},
    {"tanh", Func::tanh},
    {"exp", Func::exp},
    {"ln", Func::ln},
    {"sqrt", Func::sqrt},
    {"abs", Func::abs},
}};

double apply_func(Func f, double v) {
    switch (f) {
        case Func::sin: return std::sin(v);
        case Func::cos: return std::cos(v);
        case Func::tan: return std::tan(v);
        case Func::tanh: return std::tanh(v);
        case Func::exp: return std::exp(v);
        case Func::ln: return std::log(v);
        case Func::sqrt: return std::sqrt(v);
        case Func::abs: return std::abs(v);
    }
    return std::nan("");
}

double apply_binary(Kind k, double a, double b) {
    switch (k) {
        case Kind::add: return a + b;
        case Kind::sub: return a - b;
        case Kind::mul: return a * b;
        case Kind::div: return a / b;
        case Kind::pow: return std::pow(a, b);
        default: return std::nan("");
    }
}

NodePtr make_leaf(Kind k, double v = 0.0) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->value = v;
    return n;
}

NodePtr make_unary(Kind k, NodePtr a, Func f = Func::sin) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->func = f;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

enum class Tok { number, ident, op, lparen, rparen, end };

struct Token {
    Tok type;
    std::size_t pos;
    std::string text;
    double value = 0.0;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                    i = j;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                }
            }
            std::string text(s.substr(start, i - start));
            char* end = nullptr;
            double v = std::strtod(text.c_str(), &end);
            if (end != text.c_str() + text.size()) throw ParseError("malformed number '" + text + "'", start);
            if (!std::isfinite(v)) throw ParseError("number out of range '" + text + "'", start);
            out.push_back({Tok::number, start, text, v});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::ident, start, std::string(s.substr(start, i - start))});
        } else if (c == '(') {
            out.push_back({Tok::lparen, i++, "("});
        } else if (c == ')') {
            out.push_back({Tok::rparen, i++, ")"});
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            out.push_back({Tok::op, i++, std::string(1, c)});
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::end, s.size(), ""});
    return out;
}

// Binding powers: + - 1, * / 2, unary minus 3, ^ 4 (right associative).
constexpr int kUnaryPrec = 3;

class Parser {
public:
    explicit Parser(std::string_view s) : toks_(tokenize(s)) {}

    NodePtr parse_all() {
        if (peek().type == Tok::end) throw ParseError("empty expression", 0);
        NodePtr e = expression(0);
        if (peek().type == Tok::rparen) throw ParseError("unbalanced ')'", peek().pos);
        if (peek().type != Tok::end) throw ParseError("trailing tokens starting at '" + peek().text + "'", peek().pos);
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    static int binary_prec(const Token& t) {
        if (t.type != Tok::op) return -1;
        switch (t.text[0]) {
            case '+':
            case '-': return 1;
            case '*':
            case '/': return 2;
            case '^': return 4;
        }
        return -1;
    }

    static Kind binary_kind(char c) {
        switch (c) {
            case '+': return Kind::add;
            case '-': return Kind::sub;
            case '*': return Kind::mul;
            case '/': return Kind::div;
            default: return Kind::pow;
        }
    }

    NodePtr expression(int min_prec) {
        NodePtr lhs = prefix();
        for (;;) {
            const Token& t = peek();
            int p = binary_prec(t);
            if (p < 0 || p < min_prec) break;
            char op = t.text[0];
            next();
            int rhs_min = (op == '^') ? p : p + 1;
            NodePtr rhs = expression(rhs_min);
            lhs = make_binary(binary_kind(op), lhs, rhs);
        }
        return lhs;
    }

    NodePtr prefix() {
        const Token& t = next();
        switch (t.type) {
            case Tok::number: return make_leaf(Kind::number, t.value);
            case Tok::op:
                if (t.text == "-") return make_unary(Kind::neg, expression(kUnaryPrec));
                if (t.text == "+") return expression(kUnaryPrec);
                throw ParseError("expected operand before '" + t.text + "'", t.pos);
            case Tok::lparen: {
                if (peek().type == Tok::rparen) throw ParseError("empty parentheses", peek().pos);
                if (peek().type == Tok::end) throw ParseError("unbalanced '('", peek().pos);
                NodePtr e = expression(0);
                if (peek().type != Tok::rparen) throw ParseError("unbalanced '(' opened at offset " + std::to_string(t.pos), peek().pos);
                next();
                return e;
            }
            case Tok::ident: return identifier(t);
            case Tok::rparen: throw ParseError("unbalanced ')'", t.pos);
            case Tok::end: throw ParseError("expected operand", t.pos);
        }
        throw ParseError("unexpected token", t.pos);
    }

    NodePtr identifier(const Token& t) {
        if (t.text == "x") return make_leaf(Kind::var_x);
        if (t.text == "y") return make_leaf(Kind::var_y);
        if (t.text == "pi") return make_leaf(Kind::pi);
        for (const auto& f : kFuncs) {
            if (t.text != f.name) continue;
            if (peek().type != Tok::lparen) throw ParseError("function '" + t.text + "' needs '('", peek().pos);
            std::size_t open = next().pos;
            if (peek().type == Tok::rparen) throw ParseError("empty argument to '" + t.text + "'", peek().pos);
            if (peek().type == Tok::end) throw ParseError("missing argument to '" + t.text + "'", peek().pos);
            NodePtr arg = expression(0);
            if (peek().type != Tok::rparen) throw ParseError("unbalanced '(' opened at offset " + std::to_string(open), peek().pos);
            next();
            return make_unary(Kind::call, arg, f.func);
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.pos);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

int node_prec(const ExprNode& n) {
    switch (n.kind) {
        case Kind::add:
        case Kind::sub: return 1;
        case Kind::mul:
        case Kind::div: return 2;
        case Kind::neg: return kUnaryPrec;
        case Kind::pow: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const ExprNode& n, std::string& out) {
    auto child = [&](const ExprNode& c, bool parens) {
        if (parens) out += '(';
        print(c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case Kind::number: out += format_number(n.value); return;
        case Kind::var_x: out += 'x'; return;
        case Kind::var_y: out += 'y'; return;
        case Kind::pi: out += "pi"; return;
        case Kind::neg:
            out += '-';
            child(*n.lhs, node_prec(*n.lhs) < kUnaryPrec);
            return;
        case Kind::call:
            out += func_name(n.func);
            child(*n.lhs, true);
            return;
        default: break;
    }
    int p = node_prec(n);
    bool right_assoc = n.kind == Kind::pow;
    int lp = node_prec(*n.lhs), rp = node_prec(*n.rhs);
    child(*n.lhs, lp < p || (right_assoc && lp == p));
    switch (n.kind) {
        case Kind::add: out += " + "; break;
        case Kind::sub: out += " - "; break;
        case Kind::mul: out += "*"; break;
        case Kind::div: out += "/"; break;
        default: out += "^"; break;
    }
    child(*n.rhs, rp < p || (!right_assoc && rp == p));
}

double tree_eval(const ExprNode& n, double x, double y) {
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::var_x: return x;
        case Kind::var_y: return y;
        case Kind::pi: return std::numbers::pi;
        case Kind::neg: return -tree_eval(*n.lhs, x, y);
        case Kind::call: return apply_func(n.func, tree_eval(*n.lhs, x, y));
        default: return apply_binary(n.kind, tree_eval(*n.lhs, x, y), tree_eval(*n.rhs, x, y));
    }
}

bool tree_uses_y(const ExprNode& n) {
    if (n.kind == Kind::var_y) return true;
    if (n.lhs && tree_uses_y(*n.lhs)) return true;
    return n.rhs && tree_uses_y(*n.rhs);
}

}  // namespace

const char* func_name(Func f) {
    for (const auto& e : kFuncs)
        if (e.func == f) return e.name;
    return "?";
}

Expr::Expr() : Expr(make_leaf(Kind::number, 0.0), "0") {}

Expr::Expr(std::shared_ptr<const ExprNode> root, std::string source) : root_(std::move(root)), source_(std::move(source)) {
    if (source_.empty()) source_ = to_string();
    compile();
}

Expr Expr::constant(double v) { return Expr(make_leaf(Kind::number, v)); }

void Expr::compile() {
    code_.clear();
    int depth = 0;
    max_depth_ = 0;
    auto emit = [&](auto&& self, const ExprNode& n) -> void {
        if (n.lhs) self(self, *n.lhs);
        if (n.rhs) self(self, *n.rhs);
        code_.push_back({n.kind, n.func, n.value});
        switch (n.kind) {
            case Kind::number:
            case Kind::var_x:
            case Kind::var_y:
            case Kind::pi: ++depth; break;
            case Kind::neg:
            case Kind::call: break;
            default: --depth; break;
        }
        max_depth_ = std::max(max_depth_, depth);
    };
    emit(emit, *root_);
}

double Expr::eval(double x, double y) const {
    constexpr int kInline = 32;
    std::array<double, kInline> small{};
    std::vector<double> big;
    double* st = small.data();
    if (max_depth_ > kInline) {
        big.resize(max_depth_);
        st = big.data();
    }
    int sp = 0;
    for (const Instr& in : code_) {
        switch (in.kind) {
            case Kind::number: st[sp++] = in.value; break;
            case Kind::var_x: st[sp++] = x; break;
            case Kind::var_y: st[sp++] = y; break;
            case Kind::pi: st[sp++] = std::numbers::pi; break;
            case Kind::neg: st[sp - 1] = -st[sp - 1]; break;
            case Kind::call: st[sp - 1] = apply_func(in.func, st[sp - 1]); break;
            default:
                --sp;
                st[sp - 1] = apply_binary(in.kind, st[sp - 1], st[sp]);
                break;
        }
    }
    return st[0];
}

double Expr::eval_tree(double x, double y) const { return tree_eval(*root_, x, y); }

std::optional<double> Expr::try_eval(double x, double y) const {
    double v = eval(x, y);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

double Expr::eval_checked(double x, double y) const {
    double v = eval(x, y);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "expression '" << source_ << "' is non-finite at (x, y) = (" << x << ", " << y << ")";
        throw NumericalError(os.str());
    }
    return v;
}

std::string Expr::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

bool Expr::uses_y() const { return tree_uses_y(*root_); }

Expr parse(std::string_view text) {
    Parser p(text);
    return Expr(p.parse_all(), std::string(text));
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::number && !(a.value == b.value)) return false;
    if (a.kind == Kind::call && a.func != b.func) return false;
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

}  // namespace aer
