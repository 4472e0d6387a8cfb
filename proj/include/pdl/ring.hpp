#pragma once

// Exact multivariate polynomials over Q in a named coordinate frame.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pdl/error.hpp"

namespace pdl {

using Rational = mpq_class;
using Integer = mpz_class;

/// Maximum number of coordinates in a frame. Index sets of multivectors are
/// stored as 32-bit masks, so this bound is shared by the exterior algebra.
inline constexpr std::size_t kMaxVariables = 32;

/// Parses "p" or "p/q" into a canonical rational; throws DomainError on junk.
Rational make_rational(std::string_view text);
Rational make_rational(long numerator, long denominator = 1);

class Frame {
public:
    Frame();
    explicit Frame(std::vector<std::string> names);
    Frame(std::initializer_list<std::string> names);

    std::size_t dimension() const noexcept { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const noexcept { return *names_; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Index of `name`; throws DomainError for an unknown variable.
    std::size_t index(std::string_view name) const;

    /// A copy with one extra trailing coordinate.
    Frame extended(const std::string& name) const;
    /// A name starting with `base` not already used in the frame.
    std::string fresh_name(const std::string& base) const;

    std::string to_string() const;

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Throws FrameMismatch unless `a == b`.
void require_same_frame(const Frame& a, const Frame& b, std::string_view what);

class Monomial {
public:
    using Exponent = std::uint16_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars);
    Monomial(std::initializer_list<unsigned> exponents);

    std::size_t size() const noexcept { return size_; }
    unsigned operator[](std::size_t i) const noexcept { return exp_[i]; }
    unsigned degree() const noexcept { return degree_; }
    /// Bit i set iff variable i occurs.
    std::uint32_t support() const noexcept;

    void set(std::size_t i, unsigned e);

    bool divides(const Monomial& other) const noexcept;
    bool coprime(const Monomial& other) const noexcept;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// a / b; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend Monomial lcm(const Monomial& a, const Monomial& b);
    friend Monomial gcd(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.size_ == b.size_ && a.exp_ == b.exp_;
    }

private:
    std::array<Exponent, kMaxVariables> exp_{};
    std::uint32_t degree_ = 0;
    std::uint8_t size_ = 0;
};

/// Graded reverse lexicographic comparison: negative, zero or positive.
int compare_grevlex(const Monomial& a, const Monomial& b) noexcept;

class MonomialOrder {
public:
    enum class Kind { grevlex, lex, block };

    static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
    static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
    /// Variables [0, split) form the eliminated block; each block is grevlex.
    static MonomialOrder block(std::size_t split) { return MonomialOrder(Kind::block, split); }

    Kind kind() const noexcept { return kind_; }
    std::size_t split() const noexcept { return split_; }

    int compare(const Monomial& a, const Monomial& b) const noexcept;
    bool greater(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) > 0; }

    std::string name() const;

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
        return a.kind_ == b.kind_ && a.split_ == b.split_;
    }

private:
    MonomialOrder(Kind kind, std::size_t split) : kind_(kind), split_(split) {}

    Kind kind_;
    std::size_t split_;
};

struct Term {
    Monomial monomial;
    Rational coeff;
};

/// Polynomial with exact rational coefficients. Terms are kept in descending
/// grevlex order with no zero coefficients, so equal values are represented
/// (and serialized) identically.
class Polynomial {
public:
    Polynomial();
    explicit Polynomial(Frame frame);

    static Polynomial constant(Frame frame, const Rational& c);
    static Polynomial variable(Frame frame, std::size_t index);
    static Polynomial variable(Frame frame, std::string_view name);
    static Polynomial monomial(Frame frame, const Monomial& m, const Rational& c = 1);
    /// Combines like terms, drops zeros and sorts.
    static Polynomial from_terms(Frame frame, std::vector<Term> terms);

    const Frame& frame() const noexcept { return frame_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Nullopt for the zero polynomial, whose degree is undefined.
    std::optional<unsigned> total_degree() const;
    const Term& leading_term() const;
    Rational coefficient(const Monomial& m) const;
    bool depends_on(std::size_t var) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator-(Polynomial a);

    friend bool operator==(const Polynomial& a, const Polynomial& b);

    /// Makes the leading coefficient one (zero stays zero).
    Polynomial monic() const;

    /// The same polynomial in another frame, matching variables by name.
    Polynomial rebased(const Frame& target) const;

    std::string to_string() const;

private:
    Frame frame_;
    std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, unsigned exponent);
Polynomial diff(const Polynomial& p, std::size_t var);
Polynomial diff(const Polynomial& p, std::string_view var);
/// Replaces every variable by the given polynomial (all in one target frame).
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& values);
Rational evaluate(const Polynomial& p, const std::vector<Rational>& point);

struct Grading {
    bool homogeneous = true;
    /// Set only for a nonzero homogeneous polynomial.
    std::optional<unsigned> degree;
    std::map<unsigned, Polynomial> components;
};

Grading grading(const Polynomial& p);

/// Coefficient text: "3", "-1/2".
std::string to_string(const Rational& c);

} // namespace pdl
