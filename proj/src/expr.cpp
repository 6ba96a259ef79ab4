#include "masseylab/expr.hpp"

#include <cctype>

namespace masseylab {

namespace {

struct Parser {
    const std::string& src;
    const AlgebraHandle& algebra;
    std::size_t pos = 0;

    bool eof() const { return pos >= src.size(); }
    char peek() const { return src[pos]; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        throw ParseError(what, at);
    }

    bool at_digit() const { return !eof() && std::isdigit(static_cast<unsigned char>(peek())); }
    bool at_name() const {
        return !eof() &&
               (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_');
    }

    Integer parse_digits(const char* what) {
        skip_ws();
        const std::size_t start = pos;
        if (!at_digit()) fail(std::string("expected ") + what, pos);
        while (at_digit()) ++pos;
        return Integer(src.substr(start, pos - start));
    }

    std::string parse_name() {
        skip_ws();
        const std::size_t start = pos;
        if (!at_name()) fail("expected a name", pos);
        ++pos;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ++pos;
        return src.substr(start, pos - start);
    }

    Rational parse_coeff() {
        const Integer num = parse_digits("an integer coefficient");
        skip_ws();
        if (!eof() && peek() == '/') {
            ++pos;
            const std::size_t den_at = pos;
            const Integer den = parse_digits("a positive denominator");
            if (den == 0) fail("zero denominator", den_at);
            return Rational(num, den);
        }
        return Rational(num);
    }

    Cochain parse_factor() {
        skip_ws();
        const std::size_t at = pos;
        const std::string name = parse_name();
        auto found = algebra->find_basis_element(name);
        if (!found) fail("unknown generator or basis element '" + name + "'", at);
        Cochain value = basis_cochain(algebra, found->first, found->second);
        skip_ws();
        if (!eof() && peek() == '^') {
            ++pos;
            const std::size_t exp_at = pos;
            const Integer e = parse_digits("a positive exponent");
            if (e < 1) fail("exponent must be positive", exp_at);
            Cochain power = value;
            try {
                for (Integer i = 1; i < e; ++i) power = multiply(power, value);
            } catch (const DomainError& err) {
                fail(err.what(), at);
            }
            return power;
        }
        return value;
    }

    Cochain parse_monomial() {
        Cochain value = parse_factor();
        while (true) {
            skip_ws();
            if (eof() || peek() != '*') break;
            const std::size_t at = pos;
            ++pos;
            skip_ws();
            if (!at_name()) fail("expected a name after '*'", pos);
            try {
                value = multiply(value, parse_factor());
            } catch (const DomainError& err) {
                fail(err.what(), at);
            }
        }
        return value;
    }

    // nullopt marks the degree-flexible scalar zero
    std::optional<Cochain> parse_term() {
        skip_ws();
        if (at_digit()) {
            const std::size_t at = pos;
            Rational coeff = parse_coeff();
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos;
                skip_ws();
                if (!at_name()) fail("expected a name after '*'", pos);
                Cochain mono = parse_monomial();
                try {
                    return mono.scaled_by(coeff);
                } catch (const DomainError& err) {
                    fail(err.what(), at);
                }
            }
            if (coeff == 0) return std::nullopt;
            Cochain unit = basis_cochain(algebra, 0, algebra->unit_index());
            return unit.scaled_by(coeff);
        }
        if (at_name()) return parse_monomial();
        fail("expected a term", pos);
    }

    std::optional<Cochain> parse_expr() {
        skip_ws();
        if (eof()) fail("empty expression", pos);
        Rational sign(1);
        if (peek() == '+' || peek() == '-') {
            if (peek() == '-') sign = -1;
            ++pos;
        }
        std::optional<Cochain> acc;
        bool saw_term = false;
        while (true) {
            skip_ws();
            const std::size_t term_at = pos;
            std::optional<Cochain> term = parse_term();
            saw_term = true;
            if (term) {
                Cochain value = term->scaled_by(sign);
                if (!acc) {
                    acc = std::move(value);
                } else if (acc->degree() != value.degree()) {
                    fail("non-homogeneous sum: degree " + std::to_string(value.degree()) +
                             " term added to degree " + std::to_string(acc->degree()),
                         term_at);
                } else {
                    acc = *acc + value;
                }
            }
            skip_ws();
            if (eof()) break;
            if (peek() == '+') {
                sign = 1;
                ++pos;
            } else if (peek() == '-') {
                sign = -1;
                ++pos;
            } else {
                fail("expected '+' or '-'", pos);
            }
        }
        if (!saw_term) fail("empty expression", pos);
        return acc;
    }
};

} // namespace

Cochain parse_expression(const std::string& src, const AlgebraHandle& algebra) {
    if (!algebra) throw DomainError("parse_expression: null algebra handle");
    Parser p{src, algebra};
    auto value = p.parse_expr();
    return value ? *value : zero_cochain(algebra, 0);
}

Cochain parse_expression(const std::string& src, const AlgebraHandle& algebra,
                         int expected_degree) {
    if (!algebra) throw DomainError("parse_expression: null algebra handle");
    Parser p{src, algebra};
    auto value = p.parse_expr();
    if (!value) return zero_cochain(algebra, expected_degree);
    if (value->degree() != expected_degree)
        throw ParseError("expression has degree " + std::to_string(value->degree()) +
                             ", expected " + std::to_string(expected_degree),
                         0);
    return *value;
}

} // namespace masseylab
