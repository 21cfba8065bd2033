#include "quadring/format.hpp"

#include <cctype>
#include <string>

#include "mpz_ll.hpp"

namespace quadring {

namespace {

// a + b*sqrt(m) with explicit coefficient on the radical, zero parts omitted.
std::string render_pair(const mpz_class& a, const mpz_class& b, long long m) {
    if (a == 0 && b == 0) return "0";
    std::string out;
    if (a != 0) out += a.get_str();
    if (b != 0) {
        if (b > 0 && a != 0) out += '+';
        out += b.get_str();
        out += "*sqrt(";
        out += std::to_string(m);
        out += ')';
    }
    return out;
}

struct Scanner {
    std::string_view s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        ws();
        return i == s.size();
    }
    char peek() {
        ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        ws();
        if (s.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
};

mpz_class parse_uint(Scanner& sc) {
    sc.ws();
    size_t j = sc.i;
    while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) ++sc.i;
    if (sc.i == j) fail(errc::parse_error, "expected a number");
    return mpz_class(std::string(sc.s.substr(j, sc.i - j)), 10);
}

void expect_radical(Scanner& sc, const FieldParams& field) {
    if (!sc.eat_word("sqrt") || !sc.eat('(')) fail(errc::parse_error, "expected sqrt(m)");
    bool neg = sc.eat('-');
    mpz_class rad = parse_uint(sc);
    if (neg) rad = -rad;
    if (!sc.eat(')')) fail(errc::parse_error, "unterminated radicand");
    if (rad != ll2z(field.m)) fail(errc::parse_error, "radicand does not match the field");
}

// Sum of signed terms; each term is an integer, "n*sqrt(m)", or a bare "sqrt(m)".
void parse_terms(Scanner& sc, const FieldParams& field, mpz_class& a, mpz_class& b) {
    bool first = true;
    for (;;) {
        if (sc.at_end() || sc.peek() == ')') {
            if (first) fail(errc::parse_error, "empty expression");
            return;
        }
        int sg = 1;
        if (sc.eat('+'))
            sg = 1;
        else if (sc.eat('-'))
            sg = -1;
        else if (!first)
            fail(errc::parse_error, "expected + or - between terms");
        if (sc.peek() == 's') {
            expect_radical(sc, field);
            b += sg;
        } else {
            mpz_class n = parse_uint(sc);
            if (sc.eat('*')) {
                expect_radical(sc, field);
                b += sg * n;
            } else {
                a += sg * n;
            }
        }
        first = false;
    }
}

} // namespace

std::string render(const QuadInt& x) {
    if (mpz_even_p(x.u().get_mpz_t()) && mpz_even_p(x.v().get_mpz_t()))
        return render_pair(x.u() / 2, x.v() / 2, x.field().m);
    return "(" + render_pair(x.u(), x.v(), x.field().m) + ")/2";
}

std::string render(const XiForm& xi) {
    std::string inner = render_pair(xi.a, xi.b, xi.field.m);
    if (xi.c == 1) return inner;
    return "(" + inner + ")/" + xi.c.get_str();
}

QuadInt parse_quadint(std::string_view text, const FieldParams& field) {
    Scanner sc{text, 0};
    mpz_class a = 0, b = 0;
    if (sc.eat('(')) {
        parse_terms(sc, field, a, b);
        if (!sc.eat(')')) fail(errc::parse_error, "unbalanced parenthesis");
        if (!sc.eat('/')) fail(errc::parse_error, "expected /2 after closing parenthesis");
        if (parse_uint(sc) != 2) fail(errc::parse_error, "element denominator must be 2");
        if (!sc.at_end()) fail(errc::parse_error, "trailing characters");
        return QuadInt::canon(a, b, field);
    }
    parse_terms(sc, field, a, b);
    if (!sc.at_end()) fail(errc::parse_error, "trailing characters");
    return QuadInt::from_ab(a, b, field);
}

} // namespace quadring
