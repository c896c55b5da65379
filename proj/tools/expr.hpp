#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace mixtest::cli {

// Closed arithmetic expressions over the observation index: numbers, `i`,
// + - * /, unary minus, log/sqrt/exp, parentheses. Used for null-component
// rules and known shift sequences ("1/log(i+1)", "2 + 1/sqrt(i)", ...).
class IndexExpr {
public:
    static IndexExpr parse(const std::string& text);

    double eval(std::size_t i) const { return fn_(static_cast<double>(i)); }
    bool uses_index() const { return uses_index_; }

private:
    std::function<double(double)> fn_;
    bool uses_index_ = false;
};

namespace detail {

struct ExprParser {
    using Fn = std::function<double(double)>;

    const std::string& text;
    std::size_t pos = 0;
    bool uses_index = false;

    explicit ExprParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("expression '" + text + "': " + why + " at position " +
                                    std::to_string(pos));
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Fn parse_expr() {
        Fn acc = parse_term();
        while (true) {
            if (consume('+')) {
                Fn rhs = parse_term();
                acc = [acc, rhs](double i) { return acc(i) + rhs(i); };
            } else if (consume('-')) {
                Fn rhs = parse_term();
                acc = [acc, rhs](double i) { return acc(i) - rhs(i); };
            } else {
                return acc;
            }
        }
    }

    Fn parse_term() {
        Fn acc = parse_unary();
        while (true) {
            if (consume('*')) {
                Fn rhs = parse_unary();
                acc = [acc, rhs](double i) { return acc(i) * rhs(i); };
            } else if (consume('/')) {
                Fn rhs = parse_unary();
                acc = [acc, rhs](double i) { return acc(i) / rhs(i); };
            } else {
                return acc;
            }
        }
    }

    Fn parse_unary() {
        if (consume('-')) {
            Fn inner = parse_unary();
            return [inner](double i) { return -inner(i); };
        }
        return parse_primary();
    }

    Fn parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end");

        if (consume('(')) {
            Fn inner = parse_expr();
            if (!consume(')')) fail("missing ')'");
            return inner;
        }

        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(text.c_str() + pos, &end);
            if (end == text.c_str() + pos) fail("bad number");
            pos = static_cast<std::size_t>(end - text.c_str());
            return [v](double) { return v; };
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
            const std::string name = text.substr(start, pos - start);
            if (name == "i") {
                uses_index = true;
                return [](double i) { return i; };
            }
            if (name == "log" || name == "sqrt" || name == "exp") {
                if (!consume('(')) fail("'" + name + "' needs '('");
                Fn inner = parse_expr();
                if (!consume(')')) fail("missing ')'");
                if (name == "log") return [inner](double i) { return std::log(inner(i)); };
                if (name == "sqrt") return [inner](double i) { return std::sqrt(inner(i)); };
                return [inner](double i) { return std::exp(inner(i)); };
            }
            pos = start;
            fail("unknown name '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace detail

inline IndexExpr IndexExpr::parse(const std::string& text) {
    detail::ExprParser p(text);
    IndexExpr e;
    e.fn_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    e.uses_index_ = p.uses_index;
    return e;
}

}  // namespace mixtest::cli
