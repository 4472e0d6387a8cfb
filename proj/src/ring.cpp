#include "pdl/ring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>
#include <sstream>

namespace pdl {

Rational make_rational(std::string_view text)
{
    Rational r;
    if (text.empty() || r.set_str(std::string(text), 10) != 0)
        throw DomainError("not a rational number: '" + std::string(text) + "'");
    if (text.find('/') != std::string_view::npos && r.get_den() == 0)
        throw DomainError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

Rational make_rational(long numerator, long denominator)
{
    if (denominator == 0)
        throw DomainError("zero denominator");
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& c)
{
    return c.get_str();
}

// ---------------------------------------------------------------- Frame

namespace {

bool valid_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    });
}

} // namespace

Frame::Frame() : names_(std::make_shared<const std::vector<std::string>>()) {}

Frame::Frame(std::vector<std::string> names)
{
    if (names.size() > kMaxVariables)
        throw DomainError("frame has " + std::to_string(names.size()) + " variables; at most " +
                          std::to_string(kMaxVariables) + " are supported");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!valid_identifier(n))
            throw DomainError("invalid variable name '" + n + "'");
        if (!seen.insert(n).second)
            throw DomainError("duplicate variable '" + n + "' in frame");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

Frame::Frame(std::initializer_list<std::string> names) : Frame(std::vector<std::string>(names)) {}

std::optional<std::size_t> Frame::find(std::string_view name) const
{
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name)
            return i;
    return std::nullopt;
}

std::size_t Frame::index(std::string_view name) const
{
    if (auto i = find(name))
        return *i;
    throw DomainError("unknown variable '" + std::string(name) + "' in frame " + to_string());
}

Frame Frame::extended(const std::string& name) const
{
    auto names = *names_;
    names.push_back(name);
    return Frame(std::move(names));
}

std::string Frame::fresh_name(const std::string& base) const
{
    std::string candidate = base;
    for (int i = 0; find(candidate); ++i)
        candidate = base + std::to_string(i);
    return candidate;
}

std::string Frame::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < names_->size(); ++i) {
        if (i)
            out += ", ";
        out += (*names_)[i];
    }
    return out + ")";
}

void require_same_frame(const Frame& a, const Frame& b, std::string_view what)
{
    if (!(a == b))
        throw FrameMismatch(std::string(what) + ": operands live in distinct frames " + a.to_string() +
                            " and " + b.to_string());
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t nvars)
{
    if (nvars > kMaxVariables)
        throw DomainError("too many variables for a monomial");
    size_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::initializer_list<unsigned> exponents) : Monomial(exponents.size())
{
    std::size_t i = 0;
    for (unsigned e : exponents)
        set(i++, e);
}

std::uint32_t Monomial::support() const noexcept
{
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < size_; ++i)
        if (exp_[i])
            mask |= (1u << i);
    return mask;
}

void Monomial::set(std::size_t i, unsigned e)
{
    if (e > 0xFFFFu)
        throw DomainError("exponent overflow");
    degree_ = degree_ - exp_[i] + e;
    exp_[i] = static_cast<Exponent>(e);
}

bool Monomial::divides(const Monomial& other) const noexcept
{
    if (degree_ > other.degree_)
        return false;
    for (std::size_t i = 0; i < size_; ++i)
        if (exp_[i] > other.exp_[i])
            return false;
    return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept
{
    for (std::size_t i = 0; i < size_; ++i)
        if (exp_[i] && other.exp_[i])
            return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) {
        unsigned e = unsigned(a.exp_[i]) + b.exp_[i];
        if (e > 0xFFFFu)
            throw DomainError("exponent overflow");
        r.exp_[i] = static_cast<Monomial::Exponent>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
        r.exp_[i] = static_cast<Monomial::Exponent>(a.exp_[i] - b.exp_[i]);
    r.degree_ = a.degree_ - b.degree_;
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) {
        r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
        r.degree_ += r.exp_[i];
    }
    return r;
}

Monomial gcd(const Monomial& a, const Monomial& b)
{
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) {
        r.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
        r.degree_ += r.exp_[i];
    }
    return r;
}

int compare_grevlex(const Monomial& a, const Monomial& b) noexcept
{
    if (a.degree() != b.degree())
        return a.degree() > b.degree() ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    return 0;
}

namespace {

int compare_grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) noexcept
{
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db)
        return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept
{
    switch (kind_) {
    case Kind::grevlex:
        return compare_grevlex(a, b);
    case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] > b[i] ? 1 : -1;
        return 0;
    case Kind::block: {
        std::size_t split = std::min(split_, a.size());
        if (int c = compare_grevlex_range(a, b, 0, split))
            return c;
        return compare_grevlex_range(a, b, split, a.size());
    }
    }
    return 0;
}

std::string MonomialOrder::name() const
{
    switch (kind_) {
    case Kind::grevlex:
        return "grevlex";
    case Kind::lex:
        return "lex";
    case Kind::block:
        return "block(" + std::to_string(split_) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- Polynomial

namespace {

struct GrevlexGreater {
    bool operator()(const Term& a, const Term& b) const noexcept
    {
        return compare_grevlex(a.monomial, b.monomial) > 0;
    }
};

// Sorts descending and merges equal monomials, dropping zero sums.
void normalize_terms(std::vector<Term>& terms)
{
    std::sort(terms.begin(), terms.end(), GrevlexGreater{});
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        Rational sum = terms[i].coeff;
        while (j < terms.size() && terms[j].monomial == terms[i].monomial)
            sum += terms[j++].coeff;
        if (sgn(sum) != 0) {
            terms[out].monomial = terms[i].monomial;
            terms[out].coeff = std::move(sum);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c = i == a.size() ? -1 : j == b.size() ? 1 : compare_grevlex(a[i].monomial, b[j].monomial);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (subtract)
                out.back().coeff = -out.back().coeff;
        } else {
            Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (sgn(s) != 0)
                out.push_back(Term{a[i].monomial, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

Polynomial::Polynomial() = default;

Polynomial::Polynomial(Frame frame) : frame_(std::move(frame)) {}

Polynomial Polynomial::constant(Frame frame, const Rational& c)
{
    Polynomial p(std::move(frame));
    if (sgn(c) != 0)
        p.terms_.push_back(Term{Monomial(p.frame_.dimension()), c});
    return p;
}

Polynomial Polynomial::variable(Frame frame, std::size_t index)
{
    if (index >= frame.dimension())
        throw DomainError("variable index out of range");
    Monomial m(frame.dimension());
    m.set(index, 1);
    return monomial(std::move(frame), m, 1);
}

Polynomial Polynomial::variable(Frame frame, std::string_view name)
{
    std::size_t i = frame.index(name);
    return variable(std::move(frame), i);
}

Polynomial Polynomial::monomial(Frame frame, const Monomial& m, const Rational& c)
{
    if (m.size() != frame.dimension())
        throw DomainError("monomial length does not match frame");
    Polynomial p(std::move(frame));
    if (sgn(c) != 0)
        p.terms_.push_back(Term{m, c});
    return p;
}

Polynomial Polynomial::from_terms(Frame frame, std::vector<Term> terms)
{
    for (const auto& t : terms)
        if (t.monomial.size() != frame.dimension())
            throw DomainError("monomial length does not match frame");
    Polynomial p(std::move(frame));
    normalize_terms(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool Polynomial::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.degree() == 0);
}

std::optional<unsigned> Polynomial::total_degree() const
{
    if (terms_.empty())
        return std::nullopt;
    return terms_.front().monomial.degree();
}

const Term& Polynomial::leading_term() const
{
    if (terms_.empty())
        throw DomainError("leading term of the zero polynomial");
    return terms_.front();
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    for (const auto& t : terms_)
        if (t.monomial == m)
            return t.coeff;
    return 0;
}

bool Polynomial::depends_on(std::size_t var) const
{
    return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.monomial[var] != 0; });
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    require_same_frame(frame_, other.frame_, "add");
    terms_ = merge_terms(terms_, other.terms_, false);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    require_same_frame(frame_, other.frame_, "sub");
    terms_ = merge_terms(terms_, other.terms_, true);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    require_same_frame(a.frame_, b.frame_, "mul");
    Polynomial r(a.frame_);
    if (a.is_zero() || b.is_zero())
        return r;
    if (b.terms_.size() == 1) {
        const Term& t = b.terms_[0];
        r.terms_.reserve(a.terms_.size());
        // Multiplying by a monomial preserves the order.
        for (const auto& s : a.terms_)
            r.terms_.push_back(Term{s.monomial * t.monomial, s.coeff * t.coeff});
        return r;
    }
    if (a.terms_.size() == 1)
        return b * a;
    std::vector<Term> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            terms.push_back(Term{s.monomial * t.monomial, s.coeff * t.coeff});
    normalize_terms(terms);
    r.terms_ = std::move(terms);
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other)
{
    *this = *this * other;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.coeff *= c;
    return *this;
}

Polynomial operator-(Polynomial a)
{
    for (auto& t : a.terms_)
        t.coeff = -t.coeff;
    return a;
}

bool operator==(const Polynomial& a, const Polynomial& b)
{
    if (!(a.frame_ == b.frame_) || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return *this;
    Rational inv = 1 / terms_.front().coeff;
    return *this * inv;
}

Polynomial Polynomial::rebased(const Frame& target) const
{
    if (frame_ == target)
        return *this;
    std::vector<std::optional<std::size_t>> map(frame_.dimension());
    for (std::size_t i = 0; i < frame_.dimension(); ++i)
        map[i] = target.find(frame_.name(i));
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(target.dimension());
        for (std::size_t i = 0; i < frame_.dimension(); ++i) {
            if (!t.monomial[i])
                continue;
            if (!map[i])
                throw FrameMismatch("variable '" + frame_.name(i) + "' does not exist in frame " +
                                    target.to_string());
            m.set(*map[i], t.monomial[i]);
        }
        terms.push_back(Term{m, t.coeff});
    }
    return from_terms(target, std::move(terms));
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    // Printed in graded lexicographic order, independent of the storage order.
    std::vector<const Term*> order;
    for (const auto& t : terms_)
        order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
        if (a->monomial.degree() != b->monomial.degree())
            return a->monomial.degree() > b->monomial.degree();
        return MonomialOrder::lex().greater(a->monomial, b->monomial);
    });
    std::string out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Term& t = *order[k];
        Rational c = t.coeff;
        if (k == 0) {
            if (sgn(c) < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
            c = abs(c);
        }
        std::string mono;
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            unsigned e = t.monomial[i];
            if (!e)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += frame_.name(i);
            if (e > 1)
                mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            out += c.get_str();
        else if (c == 1)
            out += mono;
        else
            out += c.get_str() + "*" + mono;
    }
    return out;
}

Polynomial pow(const Polynomial& p, unsigned exponent)
{
    Polynomial result = Polynomial::constant(p.frame(), 1);
    Polynomial base = p;
    while (exponent) {
        if (exponent & 1u)
            result *= base;
        exponent >>= 1;
        if (exponent)
            base *= base;
    }
    return result;
}

Polynomial diff(const Polynomial& p, std::size_t var)
{
    if (var >= p.frame().dimension())
        throw DomainError("derivative with respect to an unknown variable index");
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        unsigned e = t.monomial[var];
        if (!e)
            continue;
        Monomial m = t.monomial;
        m.set(var, e - 1);
        terms.push_back(Term{m, t.coeff * e});
    }
    return Polynomial::from_terms(p.frame(), std::move(terms));
}

Polynomial diff(const Polynomial& p, std::string_view var)
{
    return diff(p, p.frame().index(var));
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& values)
{
    if (values.size() != p.frame().dimension())
        throw DomainError("substitute: need one value per variable");
    if (values.empty())
        return p;
    const Frame& target = values[0].frame();
    Polynomial result(target);
    for (const auto& t : p.terms()) {
        Polynomial term = Polynomial::constant(target, t.coeff);
        for (std::size_t i = 0; i < t.monomial.size(); ++i)
            if (t.monomial[i])
                term *= pow(values[i], t.monomial[i]);
        result += term;
    }
    return result;
}

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point)
{
    if (point.size() != p.frame().dimension())
        throw DomainError("evaluate: point has the wrong dimension");
    Rational sum = 0;
    for (const auto& t : p.terms()) {
        Rational term = t.coeff;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (unsigned e = 0; e < t.monomial[i]; ++e)
                term *= point[i];
        sum += term;
    }
    return sum;
}

Grading grading(const Polynomial& p)
{
    Grading g;
    std::map<unsigned, std::vector<Term>> pieces;
    for (const auto& t : p.terms())
        pieces[t.monomial.degree()].push_back(t);
    for (auto& [d, terms] : pieces)
        g.components.emplace(d, Polynomial::from_terms(p.frame(), std::move(terms)));
    g.homogeneous = g.components.size() <= 1;
    if (g.components.size() == 1)
        g.degree = g.components.begin()->first;
    return g;
}

} // namespace pdl
