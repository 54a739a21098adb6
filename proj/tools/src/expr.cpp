#include "wgkm_cli/expr.hpp"

#include <cctype>

#include "wgkm/error.hpp"

namespace wgkm::cli {

namespace {

/** Character cursor over the expression text with whitespace skipping and
 *  position-annotated failures. */
struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(size_t at, const std::string& msg) const {
        throw Error(ErrorKind::Usage,
                    "expression error at position " + std::to_string(at + 1) + ": " + msg);
    }
    [[noreturn]] void fail_here(const std::string& msg) { fail(i, msg); }

    void expect(char c, const std::string& context) {
        if (!eat(c)) fail_here("expected '" + std::string(1, c) + "' " + context);
    }
    int uint_lit(const std::string& what) {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail(start, "expected " + what);
        if (i - start > 6) fail(start, "number too large");
        return std::stoi(s.substr(start, i - start));
    }
    std::string ident(const std::string& what) {
        skip_ws();
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (i == start) fail(start, "expected " + what);
        return s.substr(start, i - start);
    }
};

Bundle bundle_letter(Cursor& c) {
    c.skip_ws();
    if (c.eat('T')) return Bundle::Tangent;
    if (c.eat('S')) return Bundle::Log;
    c.fail_here("expected bundle 'T' or 'S'");
}

ExprAtom parse_atom(Cursor& c) {
    c.skip_ws();
    ExprAtom a;
    a.source_pos = static_cast<int>(c.i) + 1;
    size_t atom_start = c.i;
    char head = c.peek();
    if (head == 'c') {
        ++c.i;
        a.kind = ExprAtom::Kind::Chern;
        a.index = c.uint_lit("a Chern degree after 'c'");
        if (a.index == 0)
            c.fail(atom_start, "c0 is the constant 1; degree-zero atoms are not allowed");
        c.expect('(', "after the Chern degree");
        a.bundle = bundle_letter(c);
        c.expect(')', "to close the Chern atom");
    } else if (head == 't') {
        if (c.s.compare(c.i, 2, "td") != 0) c.fail_here("unknown atom (did you mean 'td'?)");
        c.i += 2;
        a.kind = ExprAtom::Kind::Todd;
        c.expect('(', "after 'td'");
        a.bundle = bundle_letter(c);
        c.expect(')', "to close the Todd atom");
    } else if (head == 'X') {
        ++c.i;
        a.kind = ExprAtom::Kind::BoundaryX;
        a.index = c.uint_lit("a divisor index after 'X'");
        if (a.index == 0) c.fail(atom_start, "divisor indices are 1-based; X0 does not exist");
    } else if (head == 'Y') {
        ++c.i;
        a.kind = ExprAtom::Kind::BoundaryY;
        a.index = c.uint_lit("a divisor index after 'Y'");
        if (a.index == 0) c.fail(atom_start, "divisor indices are 1-based; Y0 does not exist");
        c.expect(',', "between the divisor index and the element name");
        a.element = c.ident("a restricted Weyl element name after ','");
    } else if (head == 'L') {
        ++c.i;
        a.kind = ExprAtom::Kind::Line;
        c.expect('(', "after 'L'");
        a.index = c.uint_lit("a line bundle index");
        c.expect(')', "to close the line bundle atom");
    } else {
        c.fail_here("expected an atom: cK(T|S), Xi, Yi,w, td(T|S), or L(k)");
    }
    return a;
}

ExprTerm parse_term(Cursor& c) {
    ExprTerm t;
    t.atom = parse_atom(c);
    if (c.eat('^')) {
        size_t at = c.i;
        t.exponent = c.uint_lit("an exponent after '^'");
        if (t.exponent == 0)
            c.fail(at, "zero exponents are not allowed (the power would be the constant 1)");
    }
    return t;
}

} // namespace

ClassExpr ClassExpr::parse(const std::string& text) {
    Cursor c{text};
    if (c.done()) c.fail(0, "empty expression");
    ClassExpr e;
    e.terms.push_back(parse_term(c));
    while (c.eat('*')) e.terms.push_back(parse_term(c));
    if (!c.done()) c.fail_here("unexpected trailing input");
    return e;
}

std::string ExprAtom::to_string() const {
    const char* b = bundle == Bundle::Tangent ? "T" : "S";
    switch (kind) {
    case Kind::Chern: return "c" + std::to_string(index) + "(" + b + ")";
    case Kind::BoundaryX: return "X" + std::to_string(index);
    case Kind::BoundaryY: return "Y" + std::to_string(index) + "," + element;
    case Kind::Todd: return std::string("td(") + b + ")";
    case Kind::Line: return "L(" + std::to_string(index) + ")";
    }
    return {};
}

int ExprAtom::degree() const {
    switch (kind) {
    case Kind::Chern: return index;
    case Kind::BoundaryX:
    case Kind::BoundaryY:
    case Kind::Line: return 1;
    case Kind::Todd: return -1;
    }
    return -1;
}

std::string ClassExpr::to_string() const {
    std::string out;
    for (size_t t = 0; t < terms.size(); ++t) {
        if (t) out += "*";
        out += terms[t].atom.to_string();
        if (terms[t].exponent > 1) out += "^" + std::to_string(terms[t].exponent);
    }
    return out;
}

std::optional<int> ClassExpr::degree() const {
    int total = 0;
    for (const ExprTerm& t : terms) {
        int d = t.atom.degree();
        if (d < 0) return std::nullopt;
        total += d * t.exponent;
    }
    return total;
}

bool ClassExpr::on_slice() const {
    for (const ExprTerm& t : terms)
        if (t.atom.kind == ExprAtom::Kind::BoundaryY || t.atom.kind == ExprAtom::Kind::Line)
            return true;
    return false;
}

} // namespace wgkm::cli
