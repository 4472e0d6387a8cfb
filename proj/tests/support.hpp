#pragma once

#include <random>
#include <vector>

#include "pdl/ring.hpp"

namespace pdl::testing {

inline Polynomial var(const Frame& f, const char* name)
{
    return Polynomial::variable(f, name);
}

inline Polynomial cst(const Frame& f, long n, long d = 1)
{
    return Polynomial::constant(f, make_rational(n, d));
}

// Sparse random polynomial with small integer coefficients.
inline Polynomial random_poly(std::mt19937& rng, const Frame& f, unsigned max_degree, unsigned max_terms)
{
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<unsigned> nterms(0, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, f.dimension() - 1);
    std::vector<Term> terms;
    unsigned count = nterms(rng);
    for (unsigned t = 0; t < count; ++t) {
        Monomial m(f.dimension());
        unsigned d = deg(rng);
        for (unsigned k = 0; k < d; ++k) {
            std::size_t v = pick(rng);
            m.set(v, m[v] + 1);
        }
        terms.push_back(Term{m, Rational(coeff(rng))});
    }
    return Polynomial::from_terms(f, std::move(terms));
}

inline Rational random_rational(std::mt19937& rng)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    return make_rational(num(rng), den(rng));
}

} // namespace pdl::testing

#include "pdl/exterior.hpp"

namespace pdl::testing {

template <AlternatingKind K>
Alternating<K> random_alternating(std::mt19937& rng, const Frame& f, unsigned degree, unsigned max_degree,
                                  unsigned max_terms)
{
    Alternating<K> out(f, degree);
    auto sets = subsets_of_size(f.dimension(), degree);
    std::bernoulli_distribution keep(0.6);
    for (IndexSet s : sets)
        if (keep(rng))
            out.add(s, random_poly(rng, f, max_degree, max_terms));
    return out;
}

inline PolyVector random_polyvector(std::mt19937& rng, const Frame& f, unsigned degree, unsigned max_degree = 2,
                                    unsigned max_terms = 3)
{
    return random_alternating<AlternatingKind::vector>(rng, f, degree, max_degree, max_terms);
}

inline DiffForm random_form(std::mt19937& rng, const Frame& f, unsigned degree, unsigned max_degree = 2,
                            unsigned max_terms = 3)
{
    return random_alternating<AlternatingKind::form>(rng, f, degree, max_degree, max_terms);
}

} // namespace pdl::testing
