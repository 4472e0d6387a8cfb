#include "pdl/parse.hpp"

#include <cctype>

namespace pdl {

namespace {

enum class Tok { ident, integer, vector_basis, op, newline, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    int depth = 0;
    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto can_end_statement = [&]() {
        if (out.empty() || depth > 0)
            return false;
        const Token& last = out.back();
        if (last.kind == Tok::ident || last.kind == Tok::integer || last.kind == Tok::vector_basis)
            return true;
        return last.kind == Tok::op && last.text == ")";
    };
    auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '\n') {
            if (can_end_statement())
                out.push_back({Tok::newline, "\n", line, col});
            advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (c == 'd' && src.substr(i, 3) == "d/d" && i + 3 < src.size() && is_ident_start(src[i + 3])) {
            std::size_t j = i + 3;
            while (j < src.size() && is_ident_char(src[j]))
                ++j;
            t.kind = Tok::vector_basis;
            t.text = std::string(src.substr(i + 3, j - i - 3));
            advance(j - i);
        } else if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && is_ident_char(src[j]))
                ++j;
            t.kind = Tok::ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            t.kind = Tok::integer;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::string_view("+-*/^(),;=[]").find(c) != std::string_view::npos) {
            t.kind = Tok::op;
            t.text = std::string(1, c);
            if (c == '(' || c == '[')
                ++depth;
            if ((c == ')' || c == ']') && depth > 0)
                --depth;
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

enum class Kind { scalar, vector, form };

struct Value {
    Kind kind = Kind::scalar;
    Polynomial scalar;
    PolyVector vector;
    DiffForm form;
    std::optional<Integer> literal;
};

const char* kind_name(Kind k)
{
    switch (k) {
    case Kind::scalar:
        return "function";
    case Kind::vector:
        return "polyvector";
    default:
        return "form";
    }
}

bool is_zero(const Value& v)
{
    switch (v.kind) {
    case Kind::scalar:
        return v.scalar.is_zero();
    case Kind::vector:
        return v.vector.is_zero();
    default:
        return v.form.is_zero();
    }
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::optional<Frame> frame, std::vector<ParseWarning>* warnings)
        : toks_(std::move(tokens)), frame_(std::move(frame)), warnings_(warnings)
    {
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_op(const char* op) const { return peek().kind == Tok::op && peek().text == op; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

    void expect_op(const char* op)
    {
        if (!at_op(op))
            fail(peek(), std::string("expected '") + op + "'" + found());
        next();
    }

    std::string found() const
    {
        const Token& t = peek();
        if (t.kind == Tok::end)
            return " at end of input";
        if (t.kind == Tok::newline)
            return " at end of line";
        return ", found '" + t.text + "'";
    }

    std::string expect_ident()
    {
        if (peek().kind != Tok::ident)
            fail(peek(), "expected an identifier" + found());
        return next().text;
    }

    void skip_newlines()
    {
        while (peek().kind == Tok::newline)
            next();
    }

    bool at_statement_end() const
    {
        return peek().kind == Tok::end || peek().kind == Tok::newline || at_op(";");
    }

    void end_statement()
    {
        if (!at_statement_end())
            fail(peek(), "expected ';' or end of line" + found());
        if (peek().kind != Tok::end)
            next();
    }

    const Frame& frame(const Token& at) const
    {
        if (!frame_)
            fail(at, "no frame declared");
        return *frame_;
    }
    void set_frame(Frame f) { frame_ = std::move(f); }
    const std::optional<Frame>& maybe_frame() const { return frame_; }

    Value expr()
    {
        Value acc;
        bool negate = false;
        if (at_op("+") || at_op("-")) {
            negate = next().text == "-";
        }
        acc = product();
        if (negate)
            acc = scale(acc, Rational(-1));
        while (at_op("+") || at_op("-")) {
            Token op = next();
            Value rhs = product();
            acc = add(acc, rhs, op.text == "-", op);
        }
        return acc;
    }

private:
    Value product()
    {
        Value acc = wedge_chain();
        while (at_op("*") || at_op("/")) {
            Token op = next();
            Value rhs = wedge_chain();
            if (op.text == "*")
                acc = multiply(acc, rhs, op);
            else
                acc = divide(acc, rhs, op);
        }
        return acc;
    }

    Value wedge_chain()
    {
        Value acc = atom();
        while (at_op("^")) {
            Token op = next();
            Value rhs = atom();
            acc = caret(acc, rhs, op);
        }
        return acc;
    }

    Value atom()
    {
        const Token& t = peek();
        const Frame& f = frame(t);
        Value v;
        switch (t.kind) {
        case Tok::integer: {
            Integer z(t.text);
            v.scalar = Polynomial::constant(f, Rational(z));
            v.literal = z;
            next();
            return v;
        }
        case Tok::vector_basis: {
            auto idx = f.find(t.text);
            if (!idx)
                fail(t, "unknown variable '" + t.text + "' in d/d" + t.text);
            v.kind = Kind::vector;
            v.vector = PolyVector::basis(f, {*idx}, Polynomial::constant(f, 1));
            next();
            return v;
        }
        case Tok::ident: {
            if (auto idx = f.find(t.text)) {
                v.scalar = Polynomial::variable(f, *idx);
                next();
                return v;
            }
            if (t.text.size() > 1 && t.text[0] == 'd') {
                if (auto idx = f.find(std::string_view(t.text).substr(1))) {
                    v.kind = Kind::form;
                    v.form = DiffForm::basis(f, {*idx}, Polynomial::constant(f, 1));
                    next();
                    return v;
                }
            }
            fail(t, "unknown identifier '" + t.text + "'");
        }
        case Tok::op:
            if (t.text == "(") {
                next();
                Value inner = expr();
                expect_op(")");
                inner.literal.reset();
                return inner;
            }
            break;
        default:
            break;
        }
        fail(t, "expected a term" + found());
    }

    Value scale(Value v, const Rational& c)
    {
        v.literal.reset();
        switch (v.kind) {
        case Kind::scalar:
            v.scalar *= c;
            break;
        case Kind::vector:
            v.vector *= c;
            break;
        case Kind::form:
            v.form *= c;
            break;
        }
        return v;
    }

    Value scale(Value v, const Polynomial& p)
    {
        v.literal.reset();
        switch (v.kind) {
        case Kind::scalar:
            v.scalar *= p;
            break;
        case Kind::vector:
            v.vector *= p;
            break;
        case Kind::form:
            v.form *= p;
            break;
        }
        return v;
    }

    static Value promote(const Value& scalar, Kind kind)
    {
        Value v;
        v.kind = kind;
        if (kind == Kind::vector)
            v.vector = PolyVector::scalar(scalar.scalar);
        else
            v.form = DiffForm::scalar(scalar.scalar);
        return v;
    }

    Value add(Value a, Value b, bool subtract, const Token& op)
    {
        a.literal.reset();
        if (a.kind != b.kind) {
            if (a.kind == Kind::scalar)
                a = promote(a, b.kind);
            else if (b.kind == Kind::scalar)
                b = promote(b, a.kind);
            else
                fail(op, std::string("cannot add a ") + kind_name(a.kind) + " and a " + kind_name(b.kind));
        }
        try {
            switch (a.kind) {
            case Kind::scalar:
                subtract ? a.scalar -= b.scalar : a.scalar += b.scalar;
                break;
            case Kind::vector:
                subtract ? a.vector -= b.vector : a.vector += b.vector;
                break;
            case Kind::form:
                subtract ? a.form -= b.form : a.form += b.form;
                break;
            }
        } catch (const DomainError& e) {
            fail(op, e.what());
        }
        return a;
    }

    Value multiply(const Value& a, const Value& b, const Token& op)
    {
        if (a.kind == Kind::scalar)
            return scale(b, a.scalar);
        if (b.kind == Kind::scalar)
            return scale(a, b.scalar);
        fail(op, std::string("'*' multiplies by functions only; use '^' to wedge a ") + kind_name(a.kind) +
                     " with a " + kind_name(b.kind));
    }

    Value divide(const Value& a, const Value& b, const Token& op)
    {
        if (b.kind != Kind::scalar || !b.scalar.is_constant() || b.scalar.is_zero())
            fail(op, "division only by nonzero rational constants");
        Rational c = b.scalar.leading_term().coeff;
        return scale(a, Rational(1 / c));
    }

    Value caret(const Value& a, const Value& b, const Token& op)
    {
        if (a.kind == Kind::scalar && b.literal) {
            if (!b.literal->fits_uint_p() || b.literal->get_ui() > 10000)
                fail(op, "exponent too large");
            Value out;
            out.scalar = pow(a.scalar, static_cast<unsigned>(b.literal->get_ui()));
            return out;
        }
        if (a.kind == Kind::scalar)
            return scale(b, a.scalar);
        if (b.kind == Kind::scalar)
            return scale(a, b.scalar);
        if (a.kind != b.kind)
            fail(op, std::string("cannot wedge a ") + kind_name(a.kind) + " with a " + kind_name(b.kind));
        Value out;
        out.kind = a.kind;
        if (a.kind == Kind::vector)
            out.vector = wedge(a.vector, b.vector);
        else
            out.form = wedge(a.form, b.form);
        if (!is_zero(a) && !is_zero(b) && is_zero(out) && warnings_)
            warnings_->push_back({op.line, op.column, "wedge product is identically zero"});
        return out;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<Frame> frame_;
    std::vector<ParseWarning>* warnings_;
};

Polynomial to_polynomial(const Value& v, const Token& at)
{
    if (v.kind == Kind::scalar)
        return v.scalar;
    if (v.kind == Kind::vector && v.vector.degree() == 0)
        return v.vector.as_polynomial();
    if (v.kind == Kind::form && v.form.degree() == 0)
        return v.form.as_polynomial();
    if (is_zero(v))
        return v.kind == Kind::vector ? Polynomial(v.vector.frame()) : Polynomial(v.form.frame());
    throw ParseError(std::string("expected a function, got a ") + kind_name(v.kind), at.line, at.column);
}

PolyVector to_polyvector(const Value& v, const Token& at)
{
    if (v.kind == Kind::vector)
        return v.vector;
    if (v.kind == Kind::scalar)
        return PolyVector::scalar(v.scalar);
    throw ParseError("expected a polyvector, got a form", at.line, at.column);
}

DiffForm to_form(const Value& v, const Token& at)
{
    if (v.kind == Kind::form)
        return v.form;
    if (v.kind == Kind::scalar)
        return DiffForm::scalar(v.scalar);
    throw ParseError("expected a form, got a polyvector", at.line, at.column);
}

template <typename Fn>
auto parse_single(const Frame& frame, std::string_view text, Fn convert)
{
    Parser p(lex(text), frame, nullptr);
    Token start = p.peek();
    while (p.peek().kind == Tok::newline)
        p.next();
    Value v = p.expr();
    while (p.peek().kind == Tok::newline || p.at_op(";"))
        p.next();
    if (p.peek().kind != Tok::end)
        p.fail(p.peek(), "unexpected trailing input" + p.found());
    return convert(v, start);
}

void require_degree(const PolyVector& v, unsigned degree, const Token& at, const std::string& what)
{
    if (!v.is_zero() && v.degree() != degree)
        throw ParseError(what + " must have degree " + std::to_string(degree) + ", got " + std::to_string(v.degree()),
                         at.line, at.column);
}

} // namespace

Polynomial parse_polynomial(const Frame& frame, std::string_view text)
{
    return parse_single(frame, text, to_polynomial);
}

PolyVector parse_polyvector(const Frame& frame, std::string_view text)
{
    return parse_single(frame, text, to_polyvector);
}

DiffForm parse_form(const Frame& frame, std::string_view text)
{
    return parse_single(frame, text, to_form);
}

SessionInput parse_session(std::string_view source)
{
    SessionInput session;
    Parser p(lex(source), std::nullopt, &session.warnings);
    std::vector<std::string> seen_names;
    auto claim_name = [&](const Token& at, const std::string& name) {
        for (const auto& s : seen_names)
            if (s == name)
                throw ParseError("name '" + name + "' is already defined", at.line, at.column);
        seen_names.push_back(name);
    };

    while (true) {
        while (p.peek().kind == Tok::newline || p.at_op(";"))
            p.next();
        if (p.peek().kind == Tok::end)
            break;
        Token head = p.peek();
        if (head.kind == Tok::op && head.text == "[") {
            const Frame& f = p.frame(head);
            p.next();
            Token ti = p.peek();
            std::string a = p.expect_ident();
            p.expect_op(",");
            Token tj = p.peek();
            std::string b = p.expect_ident();
            p.expect_op("]");
            p.expect_op("=");
            auto ia = f.find(a), ib = f.find(b);
            if (!ia)
                p.fail(ti, "unknown basis element '" + a + "'");
            if (!ib)
                p.fail(tj, "unknown basis element '" + b + "'");
            Token at = p.peek();
            Polynomial rhs = to_polynomial(p.expr(), at);
            auto g = grading(rhs);
            if (!rhs.is_zero() && (!g.homogeneous || g.degree != 1u))
                p.fail(at, "a Lie bracket must be a linear combination of basis elements");
            if (*ia == *ib)
                p.fail(ti, "[" + a + "," + a + "] is always zero");
            if (!session.constants)
                session.constants.emplace(f.dimension());
            for (const auto& t : rhs.terms())
                for (std::size_t k = 0; k < f.dimension(); ++k)
                    if (t.monomial[k])
                        session.constants->set(*ia, *ib, k, t.coeff);
            p.end_statement();
            continue;
        }
        if (head.kind != Tok::ident)
            p.fail(head, "expected a statement" + p.found());
        p.next();
        const std::string& kw = head.text;
        if (kw == "frame") {
            if (p.maybe_frame())
                p.fail(head, "frame already declared");
            std::vector<std::string> names;
            names.push_back(p.expect_ident());
            while (p.at_op(",")) {
                p.next();
                names.push_back(p.expect_ident());
            }
            try {
                p.set_frame(Frame(names));
            } catch (const DomainError& e) {
                p.fail(head, e.what());
            }
            session.frame = *p.maybe_frame();
        } else if (kw == "sigma") {
            if (session.sigma)
                p.fail(head, "sigma already defined");
            p.expect_op("=");
            Token at = p.peek();
            PolyVector s = to_polyvector(p.expr(), at);
            require_degree(s, 2, at, "sigma");
            if (s.is_zero())
                s = PolyVector(p.frame(head), 2);
            session.sigma = std::move(s);
        } else if (kw == "ideal") {
            Token nt = p.peek();
            std::string name = p.expect_ident();
            claim_name(nt, name);
            p.expect_op("=");
            std::vector<Polynomial> gens;
            Token at = p.peek();
            gens.push_back(to_polynomial(p.expr(), at));
            while (p.at_op(",")) {
                p.next();
                at = p.peek();
                gens.push_back(to_polynomial(p.expr(), at));
            }
            session.ideals.emplace_back(name, Ideal(p.frame(head), std::move(gens)));
        } else if (kw == "field") {
            Token nt = p.peek();
            std::string name = p.expect_ident();
            claim_name(nt, name);
            p.expect_op("=");
            Token at = p.peek();
            PolyVector z = to_polyvector(p.expr(), at);
            require_degree(z, 1, at, "a vector field");
            if (z.is_zero())
                z = PolyVector(p.frame(head), 1);
            session.fields.emplace_back(name, std::move(z));
        } else if (kw == "form") {
            Token nt = p.peek();
            std::string name = p.expect_ident();
            claim_name(nt, name);
            p.expect_op("=");
            Token at = p.peek();
            session.forms.emplace_back(name, to_form(p.expr(), at));
        } else if (kw == "poly") {
            Token nt = p.peek();
            std::string name = p.expect_ident();
            claim_name(nt, name);
            p.expect_op("=");
            Token at = p.peek();
            session.polys.emplace_back(name, to_polynomial(p.expr(), at));
        } else {
            p.fail(head, "unknown statement '" + kw + "'");
        }
        p.end_statement();
    }

    if (session.constants) {
        if (session.sigma)
            throw ParseError("sigma is defined both directly and by structure constants", 1, 1);
        session.sigma = kks_from_structure_constants(*session.constants, *session.frame).sigma();
    }
    return session;
}

} // namespace pdl
