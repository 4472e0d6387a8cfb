// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pdl/catalog.hpp"
#include "pdl/chern.hpp"
#include "pdl/error.hpp"
#include "pdl/modules.hpp"
#include "pdl/parse.hpp"
#include "support.hpp"

using namespace pdl;
using namespace pdl::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            ok = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<void(Outcome&)> body;
};

Ideal ideal_of(const Frame& f, std::initializer_list<const char*> gens)
{
    std::vector<Polynomial> g;
    for (const char* s : gens)
        g.push_back(parse_polynomial(f, s));
    return Ideal(f, std::move(g));
}

std::vector<std::string> all_entries()
{
    auto names = catalog_names();
    names.push_back("pencil:x3^2+x4^3");
    names.push_back("pencil:x3");
    names.push_back("jacobian3:x^3+y^2*z");
    return names;
}

// ---------------------------------------------------------------- oracles

Polynomial det_oracle(const PolyMatrix& M, const Frame& f)
{
    std::size_t n = M.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial total(f);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                inversions += perm[i] > perm[j];
        Polynomial term = cst(f, inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i)
            term = term * M[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

long choose(long n, long k)
{
    if (k < 0 || k > n)
        return 0;
    long out = 1;
    for (long i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

DiffForm iterate_contraction(const PolyVector& sigma, DiffForm omega, unsigned k)
{
    for (unsigned i = 0; i < k; ++i)
        omega = contract(sigma, omega);
    return omega;
}

// ---------------------------------------------------------------- criteria

void jacobi_certificates(Outcome& out)
{
    for (const char* name : {"cone", "log-line", "constant-A3", "euler-planes", "kks:sl2", "kks:sl3", "pencil:x3*x4",
                             "pencil:x3^2+x4^3"}) {
        auto entry = load_catalog(name);
        out.require(jacobi_check(*entry.session.sigma).ok(), std::string(name) + " fails Jacobi");
    }
    Frame f{"x", "y", "z"};
    auto broken = jacobi_check(parse_polyvector(f, "x*d/dx^d/dy + y*d/dy^d/dz"));
    out.require(!broken.ok() && !broken.witness.is_zero(), "broken tensor accepted");
    if (out.ok)
        out.detail = "broken tensor witness " + broken.witness.to_string();
}

void degeneracy_ideals(Outcome& out)
{
    auto cone = load_catalog("cone").structure;
    out.require(ideal_equal(degeneracy_ideal(cone, 0).ideal, ideal_of(cone.frame(), {"u", "v", "w"})),
                "cone D_0 is not (u, v, w)");
    auto euler = load_catalog("euler-planes").structure;
    out.require(ideal_equal(degeneracy_ideal(euler, 0).ideal, ideal_of(euler.frame(), {"x", "y"})),
                "euler-planes D_0 is not (x, y)");
    int checked = 0;
    for (const auto& name : all_entries()) {
        auto P = load_catalog(name).structure;
        for (unsigned k = 0; 2 * k + 2 <= P.frame().dimension(); ++k) {
            out.require(degeneracy_ideal(P, k).certified, name + " Pfaffian mismatch at k = " + std::to_string(k));
            ++checked;
        }
    }
    if (out.ok)
        out.detail = std::to_string(checked) + " Pfaffian cross-checks";
}

void degeneracy_loci_are_poisson(Outcome& out)
{
    int checked = 0;
    for (const auto& name : all_entries()) {
        auto P = load_catalog(name).structure;
        for (unsigned k = 0; 2 * k + 2 <= P.frame().dimension(); ++k) {
            auto rep = subscheme_check(P, degeneracy_ideal(P, k).ideal);
            out.require(rep.is_poisson, name + " D_" + std::to_string(2 * k) + " is not Poisson");
            ++checked;
        }
    }
    if (out.ok)
        out.detail = std::to_string(checked) + " degeneracy ideals closed under brackets";
}

void module_loci(Outcome& out)
{
    auto euler = load_catalog("euler-planes").structure;
    const Frame& f = euler.frame();
    auto M = make_module(euler, parse_polyvector(f, "x*d/dx"));
    out.require(M.flat, "x*d/dx is not Poisson");
    auto ad = module_degeneracy_ideal(M, 1);
    Ideal d2 = degeneracy_ideal(euler, 1).ideal;
    Ideal d0 = degeneracy_ideal(euler, 0).ideal;
    out.require(ideal_equal(ad.ideal, ideal_of(f, {"x*y"})), "I(AD_2) = " + ad.ideal.to_string());
    out.require(d2.basis().is_zero_ideal(), "I(D_2) is not zero");
    out.require(ideal_contains(ad.ideal, d2) && !ideal_contains(d2, ad.ideal), "I(D_2) in I(AD_2) is not strict");
    out.require(ideal_contains(d0, ad.ideal) && !ideal_contains(ad.ideal, d0), "I(AD_2) in I(D_0) is not strict");
    if (out.ok)
        out.detail = "(0) < (x*y) < (x, y)";
}

void residue_formula(Outcome& out)
{
    auto euler = load_catalog("euler-planes").structure;
    out.require(modular_residue_formula_check(euler, 0).verdict, "euler-planes k = 0");
    auto r0 = residue(canonical_module(euler), 0);
    out.require(r0.reduced == parse_polyvector(euler.frame(), "-2*d/dz"), "euler residue " + r0.reduced.to_string());
    out.require(modular_residue_formula_check(load_catalog("log-line").structure, 0).verdict, "log-line k = 0");
    for (const char* name : {"pencil:x3*x4", "pencil:x3^2+x4^3"})
        for (unsigned k : {0u, 1u})
            out.require(modular_residue_formula_check(load_catalog(name).structure, k).verdict,
                        std::string(name) + " k = " + std::to_string(k));
    if (out.ok)
        out.detail = "euler-planes residue -2*d/dz mod (x, y)";
}

void singular_locus(Outcome& out)
{
    for (const char* name : {"pencil:x3*x4", "pencil:x3^2+x4^3", "pencil:x3"})
        out.require(singular_equals_module_locus_check(load_catalog(name).structure).verdict, name);
}

void be_complex(Outcome& out)
{
    Frame f{"a", "b", "c"};
    auto z = Polynomial(f);
    auto a = var(f, "a"), b = var(f, "b"), c = var(f, "c");
    out.require(be_complex_check(PolyMatrix{{z, a, b}, {-a, z, c}, {-b, -c, z}}).verdict, "3x3");
    std::mt19937 rng(20240501);
    Frame point{"t"};
    for (int trial = 0; trial < 20; ++trial) {
        PolyMatrix S(5, std::vector<Polynomial>(5, Polynomial(point)));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) {
                S[i][j] = Polynomial::constant(point, random_rational(rng));
                S[j][i] = -S[i][j];
            }
        out.require(be_complex_check(S).verdict, "random 5x5 #" + std::to_string(trial));
    }
    out.require(be_complex_check(canonical_module(load_catalog("pencil:x3*x4").structure)).verdict, "pencil:x3*x4");
}

void intersection_theory(Outcome& out)
{
    out.require(expected_codim(7, 2) == 3, "expected_codim(7, 2)");
    for (unsigned n = 1; n <= 8; ++n) {
        auto c = chern_of_projective_space(n);
        ChowClass one = ChowClass::hyperplane_power(n, 0);
        ChowClass c3 = n >= 3 ? c[3] : ChowClass(n);
        out.require(degeneracy_class(c, 2) == c[1] * (n >= 2 ? c[2] : ChowClass(n)) - c3 * one,
                    "t = 2 class on P^" + std::to_string(n));
    }
    out.require(degeneracy_class(chern_of_projective_space(4), 2).degree(3) == 40, "degree on P^4");
    for (unsigned n = 2; n <= 6; ++n)
        out.require(sing_class_degree(n) == 2 * choose(2 * n + 2, 3), "sing_class_degree(" + std::to_string(n) + ")");
    out.require(secant_degree(5, 0) == 5 && 8 * secant_degree(5, 0) == 40, "multiplicity eight at d = 5");
    for (long d : {5, 7, 9, 11}) {
        long n = (d - 1) / 2;
        out.require(2 * choose(2 * n + 2, 3) == 8 * secant_degree(d, n - 2), "eight at d = " + std::to_string(d));
    }
}

void kks_checks(Outcome& out)
{
    auto sl2 = load_catalog("kks:sl2").structure;
    out.require(ideal_equal(degeneracy_ideal(sl2, 0).ideal, ideal_of(sl2.frame(), {"h", "e", "f"})),
                "sl2 D_0 is not maximal");
    auto sl3 = load_catalog("kks:sl3").structure;
    const Frame& f = sl3.frame();
    Ideal d2 = degeneracy_ideal(sl3, 1).ideal;
    for (const auto& g : d2.generators()) {
        auto gr = grading(g);
        out.require(gr.homogeneous && gr.degree == 2u, "non-quadratic generator " + g.to_string());
    }
    for (std::size_t i = 0; i < f.dimension(); ++i)
        out.require(!d2.basis().normal_form(Polynomial::variable(f, i)).is_zero(), f.name(i) + " lies in I(D_2)");
    for (const auto& g : d2.basis().elements())
        out.require(g.total_degree().value_or(0) >= 2, "linear element " + g.to_string());

    // Stretch goal, skipped when the budget runs out.
    std::string stretch;
    try {
        GroebnerOptions opts;
        opts.step_budget = 2'000'000;
        bool member = radical_member(d2, Polynomial::variable(f, "h1"), opts);
        stretch = member ? "h1 in radical of I(D_2)" : "h1 not in radical of I(D_2)";
        out.require(member, stretch);
    } catch (const ResourceExhausted&) {
        stretch = "radical stretch skipped on budget";
    }
    if (out.ok)
        out.detail = "sl3 I(D_2) has " + std::to_string(d2.basis().elements().size()) + " basis elements; " + stretch;
}

void property_suites(Outcome& out)
{
    std::mt19937 rng(7);
    Frame f{"a", "b", "c", "d"};
    int counts[6] = {};

    for (int trial = 0; trial < 100; ++trial) {
        auto w = random_form(rng, f, trial % 4);
        out.require(exterior_d(exterior_d(w)).is_zero(), "d^2 != 0");
        ++counts[0];
    }

    for (int trial = 0; trial < 100; ++trial) {
        unsigned u = 1 + trial % 3, v = 1 + (trial / 3) % 3, w = trial % 2 + 1;
        auto U = random_polyvector(rng, f, u), V = random_polyvector(rng, f, v), W = random_polyvector(rng, f, w);
        int s = ((u - 1) * (v - 1)) % 2 ? -1 : 1;
        out.require(schouten(U, V) == Rational(-s) * schouten(V, U), "antisymmetry");
        int lsign = ((u - 1) * v) % 2 ? -1 : 1;
        out.require(schouten(U, wedge(V, W)) == wedge(schouten(U, V), W) + Rational(lsign) * wedge(V, schouten(U, W)),
                    "Leibniz");
        if (u + v + w <= 5) {
            auto lhs = schouten(U, schouten(V, W));
            auto rhs = schouten(schouten(U, V), W) + Rational(s) * schouten(V, schouten(U, W));
            out.require(lhs == rhs, "graded Jacobi");
        }
        ++counts[1];
    }

    for (int trial = 0; trial < 100; ++trial) {
        auto U = random_polyvector(rng, f, trial % 4), V = random_polyvector(rng, f, (trial / 4) % 4);
        out.require(schouten(U, V) == schouten_oracle(U, V), "oracle disagreement");
        ++counts[2];
    }

    Frame six{"x1", "x2", "x3", "x4", "x5", "x6"};
    auto x3 = var(six, "x3"), x4 = var(six, "x4"), x5 = var(six, "x5"), x6 = var(six, "x6");
    auto sigma = PolyVector::basis(six, {0, 1}, cst(six, 1)) + PolyVector::basis(six, {2, 3}, x3 * x4 - x4 * x4) +
                 PolyVector::basis(six, {4, 5}, x5 * x6 * x6 + x5);
    out.require(schouten(sigma, sigma).is_zero(), "test bivector is not Poisson");
    for (int trial = 0; trial < 102; ++trial) {
        unsigned k = 1 + trial % 3;
        unsigned degree = 2 * k - 1 + (trial / 3) % (8 - 2 * k);
        auto omega = random_form(rng, six, degree, 2, 2);
        auto lhs = iterate_contraction(sigma, exterior_d(omega), k);
        if (omega.degree() >= 2 * k)
            lhs -= exterior_d(iterate_contraction(sigma, omega, k));
        auto inner = contract(sigma, exterior_d(omega));
        if (omega.degree() >= 2)
            inner -= exterior_d(contract(sigma, omega));
        out.require(lhs == Rational(k) * iterate_contraction(sigma, inner, k - 1),
                    "commutator identity at k = " + std::to_string(k));
        ++counts[3];
    }

    Frame g{"p", "q", "r"};
    for (int trial = 0; trial < 102; ++trial) {
        std::size_t n = 2 * (1 + trial % 3);
        PolyMatrix M(n, std::vector<Polynomial>(n, Polynomial(g)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                M[i][j] = random_poly(rng, g, 1, 2);
                M[j][i] = -M[i][j];
            }
        Polynomial pf = pfaffian(M);
        out.require(pf * pf == det_oracle(M, g), "Pf^2 != det at size " + std::to_string(n));
        ++counts[4];
    }

    std::vector<PoissonStructure> structures;
    for (const char* name : {"cone", "euler-planes", "kks:sl2", "pencil:x3*x4", "jacobian3:x*y*z"})
        structures.push_back(load_catalog(name).structure);
    for (int trial = 0; trial < 100; ++trial) {
        const auto& P = structures[trial % structures.size()];
        auto h = random_poly(rng, P.frame(), 3, 4);
        unsigned k = static_cast<unsigned>(trial / structures.size()) % (P.generic_rank() / 2);
        out.require(hamiltonian_perturbation_check(P, h, k).verdict, "perturbation component outside I(D_2k)");
        auto M = canonical_module(P);
        out.require(residue(make_module(P, M.Z + hamiltonian_field(P, h)), k) == residue(M, k),
                    "residue changed by a Hamiltonian shift");
        ++counts[5];
    }

    for (int c : counts)
        out.require(c >= 100, "fewer than 100 instances");
    if (out.ok)
        out.detail = "d^2 " + std::to_string(counts[0]) + ", Schouten identities " + std::to_string(counts[1]) +
                     ", oracle " + std::to_string(counts[2]) + ", commutator " + std::to_string(counts[3]) +
                     ", Pfaffian " + std::to_string(counts[4]) + ", perturbation " + std::to_string(counts[5]);
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Jacobi certificates", 1, jacobi_certificates},
        {2, "degeneracy ideals and Pfaffian cross-checks", 5, degeneracy_ideals},
        {3, "degeneracy ideals are Poisson", 10, degeneracy_loci_are_poisson},
        {4, "module degeneracy loci", 1, module_loci},
        {5, "modular residue formula", 5, residue_formula},
        {6, "singular scheme equals module locus", 10, singular_locus},
        {7, "Buchsbaum-Eisenbud complex", 10, be_complex},
        {8, "intersection theory", 1, intersection_theory},
        {9, "Lie-Poisson degeneracy", 60, kks_checks},
        {10, "property suites", 60, property_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.limit_seconds)
            out.require(false, "over the time limit");
        failures += !out.ok;
        std::printf("%s criterion %d: %s (%.3f s, limit %.0f s)%s%s\n", out.ok ? "PASS" : "FAIL", c.id, c.title,
                    seconds, c.limit_seconds, out.detail.empty() ? "" : ": ", out.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
