#pragma once

// Intersection numbers on projective space.

#include <string>
#include <vector>

#include "pdl/ring.hpp"

namespace pdl {

/// a_0 + a_1 H + ... + a_n H^n in the Chow ring of P^n.
class ChowClass {
public:
    explicit ChowClass(unsigned n);
    ChowClass(unsigned n, std::vector<Rational> coefficients);

    static ChowClass hyperplane_power(unsigned n, unsigned e, const Rational& c = 1);

    unsigned ambient_dimension() const noexcept { return n_; }
    const std::vector<Rational>& coefficients() const noexcept { return a_; }
    const Rational& operator[](unsigned i) const { return a_.at(i); }
    bool is_zero() const;

    /// The coefficient of H^e; throws DomainError unless it is an integer.
    Integer degree(unsigned e) const;

    ChowClass& operator+=(const ChowClass& other);
    ChowClass& operator-=(const ChowClass& other);
    friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
    friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
    friend ChowClass operator*(const ChowClass& a, const ChowClass& b);
    friend bool operator==(const ChowClass& a, const ChowClass& b) = default;

    /// "a0 + a1*H + a2*H^2", dropping zero terms.
    std::string to_string() const;

private:
    void require_same(const ChowClass& other) const;

    unsigned n_;
    std::vector<Rational> a_;
};

Integer binomial(long n, long k);

/// c_0, ..., c_n of P^n, with c_j = C(n+1, j) H^j.
std::vector<ChowClass> chern_of_projective_space(unsigned n);

/// C(r - 2k, 2); requires r >= 2k.
Integer expected_codim(long r, long k);

/// det of the t x t matrix with (i, j) entry c_{t - 2(i-1) + (j-1)}, 1-based,
/// where c_0 = 1 and indices outside the list give zero.
ChowClass degeneracy_class(const std::vector<ChowClass>& c, unsigned t);

/// 2 C(2n+2, 3), checked against the degree of c_1 c_2 - c_3 on P^{2n};
/// throws ConsistencyError if they differ.
Integer sing_class_degree(unsigned n);

/// Requires 0 <= 2k < d - 1.
long secant_dimension(long d, long k);
Integer secant_degree(long d, long k);

} // namespace pdl
