#include "pdl/chern.hpp"

#include "pdl/error.hpp"

namespace pdl {

ChowClass::ChowClass(unsigned n) : n_(n), a_(n + 1, 0) {}

ChowClass::ChowClass(unsigned n, std::vector<Rational> coefficients) : n_(n), a_(std::move(coefficients))
{
    if (a_.size() > n + 1) {
        for (std::size_t i = n + 1; i < a_.size(); ++i)
            if (a_[i] != 0)
                throw DomainError("coefficient of H^" + std::to_string(i) + " exceeds the dimension of P^" +
                                  std::to_string(n));
    }
    a_.resize(n + 1, 0);
}

ChowClass ChowClass::hyperplane_power(unsigned n, unsigned e, const Rational& c)
{
    ChowClass out(n);
    if (e <= n)
        out.a_[e] = c;
    return out;
}

bool ChowClass::is_zero() const
{
    for (const auto& x : a_)
        if (x != 0)
            return false;
    return true;
}

Integer ChowClass::degree(unsigned e) const
{
    if (e > n_)
        return 0;
    Rational c = a_[e];
    if (c.get_den() != 1)
        throw DomainError("degree " + pdl::to_string(c) + " is not an integer");
    return c.get_num();
}

void ChowClass::require_same(const ChowClass& other) const
{
    if (n_ != other.n_)
        throw DomainError("classes on P^" + std::to_string(n_) + " and P^" + std::to_string(other.n_));
}

ChowClass& ChowClass::operator+=(const ChowClass& other)
{
    require_same(other);
    for (unsigned i = 0; i <= n_; ++i)
        a_[i] += other.a_[i];
    return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& other)
{
    require_same(other);
    for (unsigned i = 0; i <= n_; ++i)
        a_[i] -= other.a_[i];
    return *this;
}

ChowClass operator*(const ChowClass& a, const ChowClass& b)
{
    a.require_same(b);
    ChowClass out(a.n_);
    for (unsigned i = 0; i <= a.n_; ++i) {
        if (a.a_[i] == 0)
            continue;
        for (unsigned j = 0; i + j <= a.n_; ++j)
            out.a_[i + j] += a.a_[i] * b.a_[j];
    }
    return out;
}

std::string ChowClass::to_string() const
{
    std::string out;
    for (unsigned i = 0; i <= n_; ++i) {
        if (a_[i] == 0)
            continue;
        Rational c = a_[i];
        bool negative = c < 0;
        if (negative)
            c = -c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string power = i == 1 ? "H" : "H^" + std::to_string(i);
        if (i == 0)
            out += pdl::to_string(c);
        else if (c == 1)
            out += power;
        else
            out += pdl::to_string(c) + "*" + power;
    }
    return out.empty() ? "0" : out;
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::vector<ChowClass> chern_of_projective_space(unsigned n)
{
    if (n < 1)
        throw DomainError("projective space of dimension at least 1 is required");
    std::vector<ChowClass> c;
    for (unsigned j = 0; j <= n; ++j)
        c.push_back(ChowClass::hyperplane_power(n, j, Rational(binomial(n + 1, j))));
    return c;
}

Integer expected_codim(long r, long k)
{
    if (k < 0 || r < 2 * k)
        throw DomainError("expected codimension needs r >= 2k >= 0");
    return binomial(r - 2 * k, 2);
}

namespace {

// Laplace expansion along the first row; the ring is commutative.
ChowClass determinant(const std::vector<std::vector<ChowClass>>& M, unsigned n)
{
    std::size_t t = M.size();
    if (t == 0)
        return ChowClass::hyperplane_power(n, 0);
    if (t == 1)
        return M[0][0];
    ChowClass out(n);
    for (std::size_t j = 0; j < t; ++j) {
        if (M[0][j].is_zero())
            continue;
        std::vector<std::vector<ChowClass>> minor;
        for (std::size_t r = 1; r < t; ++r) {
            std::vector<ChowClass> row;
            for (std::size_t c = 0; c < t; ++c)
                if (c != j)
                    row.push_back(M[r][c]);
            minor.push_back(std::move(row));
        }
        ChowClass term = M[0][j] * determinant(minor, n);
        if (j % 2 == 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

} // namespace

ChowClass degeneracy_class(const std::vector<ChowClass>& c, unsigned t)
{
    if (t < 1)
        throw DomainError("the determinant class needs t >= 1");
    if (c.empty())
        throw DomainError("no Chern classes given");
    unsigned n = c.front().ambient_dimension();
    auto entry = [&](long index) {
        if (index < 0 || index >= static_cast<long>(c.size()))
            return ChowClass(n);
        if (index == 0)
            return ChowClass::hyperplane_power(n, 0);
        return c[static_cast<std::size_t>(index)];
    };
    std::vector<std::vector<ChowClass>> M;
    for (unsigned i = 1; i <= t; ++i) {
        std::vector<ChowClass> row;
        for (unsigned j = 1; j <= t; ++j)
            row.push_back(entry(static_cast<long>(t) - 2 * static_cast<long>(i - 1) + static_cast<long>(j - 1)));
        M.push_back(std::move(row));
    }
    return determinant(M, n);
}

Integer sing_class_degree(unsigned n)
{
    if (n < 2)
        throw DomainError("the singular class formula needs n >= 2");
    Integer formula = 2 * binomial(2 * n + 2, 3);
    Integer det = degeneracy_class(chern_of_projective_space(2 * n), 2).degree(3);
    if (formula != det)
        throw ConsistencyError("2 C(2n+2, 3) = " + formula.get_str() + " but c1 c2 - c3 has degree " + det.get_str());
    return formula;
}

namespace {

void require_secant_range(long d, long k)
{
    if (k < 0 || 2 * k >= d - 1)
        throw DomainError("secant index k = " + std::to_string(k) + " needs 0 <= 2k < d - 1 with d = " +
                          std::to_string(d));
}

} // namespace

long secant_dimension(long d, long k)
{
    require_secant_range(d, k);
    return 2 * k + 1;
}

Integer secant_degree(long d, long k)
{
    require_secant_range(d, k);
    return binomial(d - k - 2, k) + binomial(d - k - 1, k + 1);
}

} // namespace pdl
