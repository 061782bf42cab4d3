#pragma once

#include "aer/errors.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aer {

class ParseError : public ConfigError {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

enum class Func { sin, cos, tan, tanh, exp, ln, sqrt, abs };

struct ExprNode {
    enum class Kind { number, var_x, var_y, pi, neg, add, sub, mul, div, pow, call };
    Kind kind = Kind::number;
    double value = 0.0;
    Func func = Func::sin;
    std::shared_ptr<const ExprNode> lhs, rhs;  // neg and call use lhs only
};

// Immutable expression in x and y. Evaluation runs a compiled stack program.
class Expr {
public:
    Expr();  // the constant 0
    explicit Expr(std::shared_ptr<const ExprNode> root, std::string source = {});

    static Expr constant(double v);

    double operator()(double x, double y) const { return eval(x, y); }
    double eval(double x, double y) const;
    // Plain tree walk, kept as a cross-check for the compiled program.
    double eval_tree(double x, double y) const;
    std::optional<double> try_eval(double x, double y) const;
    // Throws NumericalError naming the expression and point on a non-finite result.
    double eval_checked(double x, double y) const;

    const ExprNode& root() const { return *root_; }
    const std::string& source() const { return source_; }
    std::string to_string() const;
    bool uses_y() const;

private:
    struct Instr {
        ExprNode::Kind kind;
        Func func;
        double value;
    };
    void compile();

    std::shared_ptr<const ExprNode> root_;
    std::string source_;
    std::vector<Instr> code_;
    int max_depth_ = 0;
};

Expr parse(std::string_view text);

bool structurally_equal(const ExprNode& a, const ExprNode& b);
inline bool structurally_equal(const Expr& a, const Expr& b) { return structurally_equal(a.root(), b.root()); }

const char* func_name(Func f);

}  // namespace aer
