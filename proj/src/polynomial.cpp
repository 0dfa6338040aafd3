#include "chenflow/polynomial.hpp"

#include <cctype>

#include "chenflow/errors.hpp"

namespace chenflow {

namespace {

// Recursive-descent parser for +, -, *, ^, parentheses, numbers and x<k>.
template <typename S>
struct PolyParser {
    const std::string& text;
    std::size_t pos = 0;
    int variables;

    explicit PolyParser(const std::string& t, int vars) : text(t), variables(vars) {}

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool consume(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw config_error("polynomial parse error at position " + std::to_string(pos) + ": " +
                           what + " in '" + text + "'");
    }

    Polynomial<S> parse() {
        Polynomial<S> out = parse_expr();
        skip_space();
        if (pos != text.size()) fail("trailing input");
        return out;
    }

    Polynomial<S> parse_expr() {
        Polynomial<S> out = parse_term();
        for (;;) {
            if (consume('+'))
                out += parse_term();
            else if (consume('-'))
                out -= parse_term();
            else
                return out;
        }
    }

    Polynomial<S> parse_term() {
        Polynomial<S> out = parse_factor();
        while (consume('*')) out = out * parse_factor();
        return out;
    }

    Polynomial<S> parse_factor() {
        if (consume('-')) return Polynomial<S>::constant(variables, S(-1)) * parse_factor();
        if (consume('(')) {
            Polynomial<S> inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return parse_power_suffix(std::move(inner));
        }
        const char c = peek();
        if (c == 'x') return parse_power_suffix(parse_variable());
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_power_suffix(Polynomial<S>::constant(variables, parse_number()));
        fail("expected factor");
    }

    Polynomial<S> parse_power_suffix(Polynomial<S> base) {
        if (!consume('^')) return base;
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected integer exponent");
        const int exponent = std::stoi(text.substr(start, pos - start));
        Polynomial<S> out = Polynomial<S>::constant(variables, S(1));
        for (int i = 0; i < exponent; ++i) out = out * base;
        return out;
    }

    Polynomial<S> parse_variable() {
        skip_space();
        ++pos;  // 'x'
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected variable index after 'x'");
        const int index = std::stoi(text.substr(start, pos - start));
        if (index < 1 || index > variables) fail("variable index out of range");
        return Polynomial<S>::variable(variables, index);
    }

    S parse_number() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (start == pos) fail("expected number");
        std::string digits = text.substr(start, pos - start);
        if (consume('/')) {
            skip_space();
            std::size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (dstart == pos) fail("expected denominator");
            digits += "/" + text.substr(dstart, pos - dstart);
        }
        return parse_scalar<S>(digits);
    }
};

}  // namespace

template <typename S>
Polynomial<S> parse_polynomial(const std::string& text, int variables) {
    PolyParser<S> parser(text, variables);
    return parser.parse();
}

template Polynomial<Rat> parse_polynomial<Rat>(const std::string&, int);
template Polynomial<double> parse_polynomial<double>(const std::string&, int);

}  // namespace chenflow
