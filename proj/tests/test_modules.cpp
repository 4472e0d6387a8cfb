#include "doctest.h"

#include "pdl/catalog.hpp"
#include "pdl/modules.hpp"
#include "pdl/parse.hpp"
#include "support.hpp"

using namespace pdl;
using namespace pdl::testing;

namespace {

Ideal ideal_of(const Frame& f, std::initializer_list<const char*> gens)
{
    std::vector<Polynomial> g;
    for (const char* s : gens)
        g.push_back(parse_polynomial(f, s));
    return Ideal(f, std::move(g));
}

PolyVector field(const PoissonStructure& P, const char* text)
{
    return parse_polyvector(P.frame(), text);
}

} // namespace

TEST_CASE("flatness of trivialized modules")
{
    auto euler = load_catalog("euler-planes").structure;
    CHECK(make_module(euler, field(euler, "x*d/dx")).flat);
    auto bent = make_module(euler, field(euler, "z*d/dx"));
    CHECK_FALSE(bent.flat);
    CHECK_FALSE(bent.flatness_witness.is_zero());
    auto a3 = load_catalog("constant-A3").structure;
    CHECK(make_module(a3, field(a3, "d/dz")).flat);
    CHECK_THROWS_AS(make_module(a3, field(a3, "d/dx^d/dy")), DomainError);
    CHECK_THROWS_AS(residue(bent, 0), DomainError);
    CHECK_THROWS_AS(module_degeneracy_ideal(bent, 0), DomainError);
}

TEST_CASE("modular vector fields")
{
    auto log = load_catalog("log-line").structure;
    // Orientation convention: see "Signs" in the README.
    CHECK(modular_field(log) == field(log, "-d/dy"));
    auto euler = load_catalog("euler-planes").structure;
    CHECK(modular_field(euler) == field(euler, "-2*d/dz"));
    auto a3 = load_catalog("constant-A3").structure;
    CHECK(modular_field(a3).is_zero());
    CHECK(modular_field(a3).degree() == 1);
    auto sl2 = load_catalog("kks:sl2").structure;
    CHECK(modular_field(sl2).is_zero());

    // i_Z mu = -d(i_sigma mu), checked directly.
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        auto P = load_catalog(name).structure;
        auto M = canonical_module(P);
        CHECK(M.flat);
        DiffForm mu = volume_form(P.frame());
        CHECK(contract(M.Z, mu) == -exterior_d(contract(P.sigma(), mu)));
    }
}

TEST_CASE("extended skew matrix")
{
    auto euler = load_catalog("euler-planes").structure;
    auto M = make_module(euler, field(euler, "x*d/dx"));
    auto S = extended_skew_matrix(M);
    REQUIRE(S.size() == 4);
    auto C = coefficient_matrix(euler);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(S[i][j] == -S[j][i]);
            if (i > 0 && j > 0)
                CHECK(S[i][j] == C[i - 1][j - 1]);
        }
    CHECK(S[0][1] == var(euler.frame(), "x"));
    CHECK(pfaffian(S) == var(euler.frame(), "x") * var(euler.frame(), "y"));
}

TEST_CASE("residues")
{
    auto euler = load_catalog("euler-planes").structure;
    const Frame& f = euler.frame();
    auto r0 = residue(canonical_module(euler), 0);
    CHECK_FALSE(r0.is_zero());
    CHECK(r0.reduced == field(euler, "-2*d/dz"));
    CHECK(ideal_equal(r0.modulus, ideal_of(f, {"x", "y"})));
    CHECK_THROWS_AS(residue(make_module(euler, field(euler, "x*d/dx")), 1), DomainError);

    // Shifting Z by a field vanishing on D_0 leaves the class alone.
    auto shifted = make_module(euler, field(euler, "-2*d/dz + x*d/dx + y*d/dy"));
    REQUIRE(shifted.flat);
    CHECK(residue(shifted, 0) == r0);
    CHECK_FALSE(residue(make_module(euler, field(euler, "x*d/dx")), 0) == r0);

    Frame plane{"p", "q"};
    PoissonStructure symplectic(parse_polyvector(plane, "d/dp^d/dq"));
    auto rs = residue(make_module(symplectic, parse_polyvector(plane, "d/dp")), 0);
    CHECK(rs.modulus.is_unit());
    CHECK(rs.is_zero());
}

TEST_CASE("module degeneracy ideals")
{
    auto euler = load_catalog("euler-planes").structure;
    const Frame& f = euler.frame();
    auto ad = module_degeneracy_ideal(make_module(euler, field(euler, "x*d/dx")), 1);
    CHECK(ideal_equal(ad.ideal, ideal_of(f, {"x*y"})));
    CHECK(ad.pfaffian_certified);
    CHECK(ad.chain_certified);
    CHECK(ad.lower.basis().is_zero_ideal());
    CHECK(ideal_equal(ad.upper, ideal_of(f, {"x", "y"})));
    CHECK_FALSE(ideal_contains(ad.lower, ad.ideal));
    CHECK_FALSE(ideal_contains(ad.ideal, ad.upper));

    auto a3 = load_catalog("constant-A3").structure;
    CHECK(module_degeneracy_ideal(make_module(a3, field(a3, "d/dz")), 1).ideal.is_unit());
    CHECK_THROWS_AS(module_degeneracy_ideal(make_module(a3, field(a3, "d/dz")), 2), DomainError);

    auto cone = load_catalog("cone").structure;
    auto c0 = module_degeneracy_ideal(make_module(cone, PolyVector(cone.frame(), 1)), 0);
    CHECK(ideal_equal(c0.ideal, ideal_of(cone.frame(), {"u", "v", "w"})));
}

TEST_CASE("Pfaffian cross-check on random flat modules")
{
    std::mt19937 rng(21);
    for (const char* name : {"euler-planes", "cone", "kks:sl2", "pencil:x3*x4"}) {
        CAPTURE(name);
        auto P = load_catalog(name).structure;
        auto fields = poisson_fields_up_to_degree(P, 1);
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (int trial = 0; trial < 5; ++trial) {
            PolyVector Z(P.frame(), 1);
            for (const auto& b : fields)
                Z += Rational(coeff(rng)) * b;
            auto M = make_module(P, Z);
            REQUIRE(M.flat);
            for (unsigned k = 0; 2 * k + 1 <= P.frame().dimension(); ++k) {
                auto ad = module_degeneracy_ideal(M, k);
                CHECK(ad.pfaffian_certified);
                CHECK(ad.chain_certified);
            }
        }
    }
}

TEST_CASE("modular residue formula")
{
    auto euler = load_catalog("euler-planes").structure;
    auto cert = modular_residue_formula_check(euler, 0);
    CHECK(cert.verdict);

    Frame a4{"p", "q", "r", "s"};
    PoissonStructure constant(parse_polyvector(a4, "d/dp^d/dq + d/dr^d/ds"));
    CHECK(modular_residue_formula_check(constant, 0).verdict);
    CHECK(modular_residue_formula_check(constant, 1).verdict);

    CHECK(modular_residue_formula_check(load_catalog("pencil:x3^2+x4^2").structure, 1).verdict);
    CHECK_THROWS_AS(modular_residue_formula_check(euler, 1), DomainError);

    for (const auto& name : catalog_names()) {
        if (name == "kks:sl3")
            continue;
        CAPTURE(name);
        auto P = load_catalog(name).structure;
        for (unsigned k = 0; 2 * k + 2 <= P.frame().dimension(); ++k)
            CHECK(modular_residue_formula_check(P, k).verdict);
    }
}

TEST_CASE("singular scheme of the degeneracy divisor")
{
    for (const char* name : {"pencil:x3*x4", "pencil:x3^2+x4^3", "pencil:x3", "pencil:x3^2+x4^2"}) {
        CAPTURE(name);
        auto cert = singular_equals_module_locus_check(load_catalog(name).structure);
        CHECK(cert.verdict);
    }
    auto P = load_catalog("pencil:x3*x4").structure;
    auto cert = singular_equals_module_locus_check(P);
    // Jacobian ideal of x3*x4 is (x3, x4).
    bool found = false;
    for (const auto& [label, value] : cert.witnesses)
        if (label == "reduced basis")
            found = value == "(x4, x3)" || value == "(x3, x4)";
    CHECK(found);
    CHECK(load_catalog("pencil:x3").structure.generic_rank() == 4);

    Frame a4{"a", "b", "c", "d"};
    CHECK_THROWS_AS(singular_equals_module_locus_check(PoissonStructure(parse_polyvector(a4, "d/da^d/db"))),
                    DomainError);
    CHECK_THROWS_AS(singular_equals_module_locus_check(load_catalog("cone").structure), DomainError);
}

TEST_CASE("Buchsbaum-Eisenbud complex")
{
    Frame f{"a", "b", "c"};
    auto a = var(f, "a"), b = var(f, "b"), c = var(f, "c"), z = Polynomial(f);
    PolyMatrix S3{{z, a, b}, {-a, z, c}, {-b, -c, z}};
    auto v = signed_subpfaffian_vector(S3);
    CHECK(v[0] == c);
    CHECK(v[1] == -b);
    CHECK(v[2] == a);
    CHECK(be_complex_check(S3).verdict);

    std::mt19937 rng(8);
    Frame point{"t"};
    for (int trial = 0; trial < 20; ++trial) {
        PolyMatrix S(5, std::vector<Polynomial>(5, Polynomial(point)));
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) {
                S[i][j] = Polynomial::constant(point, random_rational(rng));
                S[j][i] = -S[i][j];
            }
        CHECK(be_complex_check(S).verdict);
    }

    auto pencil = load_catalog("pencil:x3*x4").structure;
    CHECK(be_complex_check(canonical_module(pencil)).verdict);

    Frame padded{"x", "y", "z", "w"};
    PoissonStructure euler4(parse_polyvector(padded, "x*d/dx^d/dz + y*d/dy^d/dz"));
    auto M = make_module(euler4, parse_polyvector(padded, "x*d/dx"));
    REQUIRE(M.flat);
    CHECK(be_complex_check(M).verdict);

    CHECK_THROWS_AS(be_complex_check(make_module(load_catalog("euler-planes").structure,
                                                 parse_polyvector(Frame{"x", "y", "z"}, "x*d/dx"))),
                    DomainError);
    CHECK_THROWS_AS(signed_subpfaffian_vector(PolyMatrix{{z, a}, {-a, z}}), DomainError);
}

TEST_CASE("Higgs obstruction")
{
    auto a3 = load_catalog("constant-A3").structure;
    auto M = make_module(a3, field(a3, "d/dz"));
    CHECK(higgs_obstruction_ideal(M).is_unit());
    CHECK_FALSE(higgs_report(M).adapted);

    auto log = load_catalog("log-line").structure;
    auto rep = higgs_report(canonical_module(log));
    CHECK(rep.top_rank.basis().is_zero_ideal());
    REQUIRE(rep.strata.size() == 1);
    CHECK_FALSE(rep.strata[0].adapted);
    CHECK_FALSE(rep.adapted);

    std::mt19937 rng(3);
    auto pencil = load_catalog("pencil:x3*x4").structure;
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_poly(rng, pencil.frame(), 2, 3);
        auto H = make_module(pencil, hamiltonian_field(pencil, g));
        REQUIRE(H.flat);
        CHECK(higgs_obstruction_ideal(H).basis().is_zero_ideal());
    }
}

TEST_CASE("Hamiltonian perturbation leaves residues unchanged")
{
    std::mt19937 rng(17);
    std::vector<PoissonStructure> structures;
    for (const char* name : {"cone", "euler-planes", "kks:sl2", "pencil:x3*x4", "jacobian3:x*y*z"})
        structures.push_back(load_catalog(name).structure);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto& P = structures[trial % structures.size()];
        auto f = random_poly(rng, P.frame(), 3, 4);
        unsigned k = static_cast<unsigned>(trial / structures.size()) % (P.generic_rank() / 2);
        CHECK(hamiltonian_perturbation_check(P, f, k).verdict);
        auto M = canonical_module(P);
        auto shifted = make_module(P, M.Z + hamiltonian_field(P, f));
        REQUIRE(shifted.flat);
        CHECK(residue(shifted, k) == residue(M, k));
        ++checked;
    }
    CHECK(checked >= 100);
}
