#include "aer/expr.hpp"

#include <doctest.h>

#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

using namespace aer;

namespace {

// Independent recursive-descent evaluator working straight on the text.
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?
class Reference {
public:
    Reference(const std::string& s, double x, double y) : s_(s), x_(x), y_(y) {}

    double run() {
        double v = expr();
        skip();
        if (p_ != s_.size()) throw std::runtime_error("trailing input");
        return v;
    }

private:
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    double term() {
        double v = unary();
        for (;;) {
            if (eat('*')) v = v * unary();
            else if (eat('/')) v = v / unary();
            else return v;
        }
    }
    double unary() {
        if (eat('-')) return -unary();
        return power();
    }
    double power() {
        double b = atom();
        if (eat('^')) return std::pow(b, unary());
        return b;
    }
    double atom() {
        skip();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) throw std::runtime_error("missing )");
            return v;
        }
        if (p_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p_])) || s_[p_] == '.')) {
            std::size_t used = 0;
            double v = std::stod(s_.substr(p_), &used);
            p_ += used;
            return v;
        }
        std::string id;
        while (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) id += s_[p_++];
        if (id == "x") return x_;
        if (id == "y") return y_;
        if (id == "pi") return std::numbers::pi;
        if (!eat('(')) throw std::runtime_error("bad identifier " + id);
        double a = expr();
        if (!eat(')')) throw std::runtime_error("missing )");
        if (id == "sin") return std::sin(a);
        if (id == "cos") return std::cos(a);
        if (id == "tan") return std::tan(a);
        if (id == "tanh") return std::tanh(a);
        if (id == "exp") return std::exp(a);
        if (id == "ln") return std::log(a);
        if (id == "sqrt") return std::sqrt(a);
        if (id == "abs") return std::abs(a);
        throw std::runtime_error("unknown function " + id);
    }

    const std::string& s_;
    double x_, y_;
    std::size_t p_ = 0;
};

double reference(const std::string& s, double x, double y) { return Reference(s, x, y).run(); }

// Random well-formed expression text with sparse, sometimes redundant, parentheses.
std::string random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    auto leaf = [&] {
        switch (pick(rng) % 5) {
            case 0: return std::string("x");
            case 1: return std::string("y");
            case 2: return std::string("pi");
            default: {
                std::uniform_real_distribution<double> u(0.1, 9.9);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3g", u(rng));
                return std::string(buf);
            }
        }
    };
    if (depth <= 0) return leaf();
    static const char* ops[] = {"+", "-", "*", "/", "^"};
    static const char* funcs[] = {"sin", "cos", "tan", "tanh", "exp", "ln", "sqrt", "abs"};
    int r = pick(rng);
    if (r < 2) return leaf();
    if (r < 4) return std::string(funcs[pick(rng) % 8]) + "(" + random_expr(rng, depth - 1) + ")";
    if (r == 4) return "-" + random_expr(rng, depth - 1);
    std::string lhs = random_expr(rng, depth - 1), rhs = random_expr(rng, depth - 1);
    if (pick(rng) < 4) lhs = "(" + lhs + ")";
    if (pick(rng) < 4) rhs = "(" + rhs + ")";
    const char* op = ops[pick(rng) % 5];
    return lhs + (pick(rng) < 5 ? " " : "") + op + rhs;
}

bool same_value(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("worked sources") {
    CHECK(parse("cos(pi*x/4)*cos(pi*y/4)").eval(0, 0) == doctest::Approx(1.0));
    CHECK(parse("y-2*cos(4*pi*x)").eval(0, 0) == doctest::Approx(-2.0));
    CHECK(parse("cos(pi*x/4)*cos(pi*y/4)").eval(1, 2) ==
          doctest::Approx(std::cos(std::numbers::pi / 4) * std::cos(std::numbers::pi / 2)));
}

TEST_CASE("precedence conventions") {
    CHECK(parse("2^3^2").eval(0, 0) == 512.0);
    CHECK(parse("-x^2").eval(2, 0) == -4.0);
    CHECK(parse("1 - 2 - 3").eval(0, 0) == -4.0);
    CHECK(parse("8 / 4 / 2").eval(0, 0) == 1.0);
    CHECK(parse("2 + 3 * 4").eval(0, 0) == 14.0);
    CHECK(parse("2 * -3").eval(0, 0) == -6.0);
    CHECK(parse("2^-1").eval(0, 0) == 0.5);
    CHECK(parse("  x *\ty ").eval(3, 4) == 12.0);
    CHECK(parse("1e-2*x").eval(5, 0) == doctest::Approx(0.05));
}

TEST_CASE("parse errors carry offsets") {
    auto offset_of = [](const char* text) -> long {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    CHECK(offset_of("cos(") == 4);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("x + foo") == 4);
    CHECK(offset_of("(x + 1") >= 0);
    CHECK(offset_of("x + 1)") == 5);
    CHECK(offset_of("x y") == 2);
    CHECK(offset_of("sin()") == 4);
    CHECK(offset_of("z") == 0);
    CHECK_THROWS_WITH(parse("cos("), doctest::Contains("offset 4"));
    CHECK_THROWS_AS(parse("t"), ConfigError);
}

TEST_CASE("non-finite results are flagged") {
    Expr e = parse("sqrt(x)");
    CHECK(std::isnan(e.eval(-1, 0)));
    CHECK_FALSE(e.try_eval(-1, 0).has_value());
    CHECK(*e.try_eval(4, 0) == 2.0);
    CHECK_THROWS_WITH_AS(e.eval_checked(-1, 0), doctest::Contains("sqrt(x)"), NumericalError);
    CHECK(std::isinf(parse("ln(x)").eval(0, 0)));
}

TEST_CASE("uses_y") {
    CHECK_FALSE(parse("cos(x) + 2").uses_y());
    CHECK(parse("x*y").uses_y());
}

TEST_CASE("printing round trip is a fixed point") {
    std::mt19937_64 rng(20240611);
    const char* fixed[] = {"2^3^2", "-x^2", "(-x)^2", "1-(2-3)", "(1-2)-3", "-(-x)", "2*-3", "2^-x^2"};
    for (const char* s : fixed) {
        Expr a = parse(s);
        Expr b = parse(a.to_string());
        CHECK_MESSAGE(structurally_equal(a, b), s << " -> " << a.to_string());
        CHECK(b.to_string() == a.to_string());
    }
    for (int i = 0; i < 1000; ++i) {
        std::string s = random_expr(rng, 5);
        Expr a = parse(s);
        Expr b = parse(a.to_string());
        REQUIRE_MESSAGE(structurally_equal(a, b), s << " -> " << a.to_string());
        CHECK(b.to_string() == a.to_string());
    }
}

TEST_CASE("compiled evaluation matches a reference evaluator on random expressions") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-3, 3);
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        std::string s = random_expr(rng, 5);
        Expr e = parse(s);
        for (int k = 0; k < 3; ++k) {
            double x = coord(rng), y = coord(rng);
            double want = reference(s, x, y);
            double got = e.eval(x, y);
            REQUIRE_MESSAGE(same_value(got, want), s << " at (" << x << ", " << y << "): " << got << " vs " << want);
            CHECK(same_value(e.eval_tree(x, y), want));
            ++compared;
        }
    }
    CHECK(compared == 3000);
}

TEST_CASE("deep nesting beyond the inline stack") {
    std::string s = "x";
    for (int i = 0; i < 60; ++i) s = "(1+" + s + ")";
    CHECK(parse(s).eval(0.5, 0) == doctest::Approx(60.5));
    std::string r = "x";
    for (int i = 0; i < 60; ++i) r = "1+(" + r + ")*1";
    CHECK(parse(r).eval(0.5, 0) == doctest::Approx(60.5));
}

}
