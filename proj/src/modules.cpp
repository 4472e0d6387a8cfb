#include "pdl/modules.hpp"

#include "pdl/error.hpp"

namespace pdl {

namespace {

std::vector<Polynomial> component_list(const PolyVector& V)
{
    std::vector<Polynomial> out;
    for (const auto& [set, c] : V.components())
        out.push_back(c);
    return out;
}

PolyVector reduce(const PolyVector& V, const Ideal& I)
{
    const GroebnerBasis& basis = I.basis();
    return V.map_coefficients([&](const Polynomial& p) { return basis.normal_form(p); });
}

void require_flat(const TrivializedModule& M)
{
    if (!M.flat)
        throw DomainError("the module is not flat: L_Z sigma = " + M.flatness_witness.to_string());
}

PolyMatrix delete_row_column(const PolyMatrix& S, std::size_t i)
{
    PolyMatrix out;
    for (std::size_t r = 0; r < S.size(); ++r) {
        if (r == i)
            continue;
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < S.size(); ++c)
            if (c != i)
                row.push_back(S[r][c]);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

TrivializedModule make_module(const PoissonStructure& P, const PolyVector& Z)
{
    if (!(Z.frame() == P.frame()))
        throw FrameMismatch("connection field and structure use different frames");
    if (Z.degree() != 1 && !Z.is_zero())
        throw DomainError("a connection field has degree 1, got degree " + std::to_string(Z.degree()));
    PolyVector field = Z.is_zero() ? PolyVector(P.frame(), 1) : Z;
    PolyVector witness = lie_derivative(field, P.sigma());
    bool flat = witness.is_zero();
    return TrivializedModule{P, std::move(field), flat, std::move(witness)};
}

PolyVector modular_field(const PoissonStructure& P)
{
    DiffForm mu = volume_form(P.frame());
    PolyVector Z = solve_volume_contraction(-exterior_d(contract(P.sigma(), mu)));
    return Z.is_zero() ? PolyVector(P.frame(), 1) : Z;
}

TrivializedModule canonical_module(const PoissonStructure& P)
{
    TrivializedModule M = make_module(P, modular_field(P));
    if (!M.flat)
        throw ConsistencyError("the modular vector field is not Poisson: " + M.flatness_witness.to_string());
    return M;
}

PolyMatrix extended_skew_matrix(const TrivializedModule& M)
{
    const Frame& frame = M.base.frame();
    std::size_t n = frame.dimension();
    PolyMatrix S(n + 1, std::vector<Polynomial>(n + 1, Polynomial(frame)));
    for (std::size_t j = 0; j < n; ++j) {
        S[0][j + 1] = M.Z.component(index_set({j}));
        S[j + 1][0] = -S[0][j + 1];
    }
    PolyMatrix C = coefficient_matrix(M.base);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            S[i + 1][j + 1] = C[i][j];
    return S;
}

bool operator==(const ResidueClass& a, const ResidueClass& b)
{
    if (a.k != b.k || !ideal_equal(a.modulus, b.modulus))
        return false;
    return reduce(a.representative - b.representative, a.modulus).is_zero();
}

ResidueClass residue(const TrivializedModule& M, unsigned k)
{
    require_flat(M);
    unsigned rank = M.base.generic_rank();
    if (2 * k >= rank)
        throw DomainError("residue index " + std::to_string(k) + " is outside the degeneracy tower (generic rank " +
                          std::to_string(rank) + ")");
    PolyVector representative = wedge(M.Z, M.base.power(k));
    Ideal modulus = degeneracy_ideal(M.base, k).ideal;
    PolyVector reduced = reduce(representative, modulus);
    return ResidueClass{k, std::move(representative), std::move(modulus), std::move(reduced)};
}

ModuleDegeneracyIdeal module_degeneracy_ideal(const TrivializedModule& M, unsigned k)
{
    require_flat(M);
    const Frame& frame = M.base.frame();
    if (2 * k + 1 > frame.dimension())
        throw DomainError("Z ^ sigma^" + std::to_string(k) + " has degree " + std::to_string(2 * k + 1) +
                          ", above the dimension " + std::to_string(frame.dimension()));
    ModuleDegeneracyIdeal out{k, Ideal(frame), Ideal(frame), Ideal(frame), Ideal::unit(frame), false, false};
    out.lower = degeneracy_ideal(M.base, k).ideal;
    if (k > 0)
        out.upper = degeneracy_ideal(M.base, k - 1).ideal;
    out.ideal = out.lower + Ideal(frame, component_list(wedge(M.Z, M.base.power(k))));

    std::vector<Polynomial> pf;
    for (auto& [rows, p] : sub_pfaffians(extended_skew_matrix(M), 2 * k + 2))
        pf.push_back(std::move(p));
    out.pfaffian_ideal = Ideal(frame, std::move(pf));
    out.pfaffian_certified = ideal_equal(out.ideal, out.pfaffian_ideal);
    if (!out.pfaffian_certified)
        throw ConsistencyError("I(AD_" + std::to_string(2 * k) + ") = " + out.ideal.to_string() +
                               " differs from the extended Pfaffian ideal " + out.pfaffian_ideal.to_string());
    out.chain_certified = ideal_contains(out.ideal, out.lower) && ideal_contains(out.upper, out.ideal);
    if (!out.chain_certified)
        throw ConsistencyError("I(D_2k) in I(AD_2k) in I(D_2k-2) fails at k = " + std::to_string(k));
    return out;
}

Certificate modular_residue_formula_check(const PoissonStructure& P, unsigned k)
{
    const Frame& frame = P.frame();
    if (2 * k + 2 > frame.dimension())
        throw DomainError("the residue formula needs 2k+2 <= dimension");
    Certificate cert{"residue-formula", "Z ^ sigma^k = -1/(k+1) Tr(D sigma^(k+1)) mod I(D_2k)", false, {}};
    cert.add("k", std::to_string(k));

    TrivializedModule M = canonical_module(P);
    PolyVector lhs = wedge(M.Z, P.power(k));
    PolyVector rhs = make_rational(-1, k + 1) * trace_contraction(jet_derivative(P.power(k + 1)));
    Ideal modulus = degeneracy_ideal(P, k).ideal;
    PolyVector lhs_reduced = reduce(lhs, modulus);
    PolyVector rhs_reduced = reduce(rhs, modulus);
    PolyVector difference = reduce(lhs - rhs, modulus);
    cert.verdict = difference.is_zero();
    cert.add("modular field", M.Z.to_string());
    cert.add("I(D_2k)", modulus.to_string());
    cert.add("Z ^ sigma^k mod I(D_2k)", lhs_reduced.to_string());
    cert.add("-1/(k+1) Tr(D sigma^(k+1)) mod I(D_2k)", rhs_reduced.to_string());
    if (!cert.verdict)
        cert.add("difference", difference.to_string());
    return cert;
}

Certificate singular_equals_module_locus_check(const PoissonStructure& P)
{
    const Frame& frame = P.frame();
    std::size_t dim = frame.dimension();
    if (dim % 2 != 0)
        throw DomainError("the singular-locus identity needs an even number of coordinates");
    unsigned n = static_cast<unsigned>(dim / 2);
    const PolyVector& top = P.power(n);
    if (top.is_zero())
        throw DomainError("not generically symplectic: sigma^" + std::to_string(n) + " = 0");
    Certificate cert{"singular-locus", "Jacobian ideal of Pf(sigma) = I(AD_2n-2) of the canonical module", false, {}};
    Polynomial pf = top.components().begin()->second;
    Ideal jac = jacobian_ideal(pf);
    ModuleDegeneracyIdeal mod = module_degeneracy_ideal(canonical_module(P), n - 1);
    cert.verdict = ideal_equal(jac, mod.ideal);
    cert.add("top power", pf.to_string());
    cert.add("singular scheme", jac.to_string());
    cert.add("module locus", mod.ideal.to_string());
    cert.add("reduced basis", Ideal(frame, jac.basis().elements()).to_string());
    return cert;
}

std::vector<Polynomial> signed_subpfaffian_vector(const PolyMatrix& S)
{
    if (S.size() % 2 == 0)
        throw DomainError("signed sub-Pfaffians need an odd skew matrix, got size " + std::to_string(S.size()));
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < S.size(); ++i) {
        Polynomial p = pfaffian(delete_row_column(S, i));
        v.push_back(i % 2 == 0 ? p : -p);
    }
    return v;
}

Certificate be_complex_check(const PolyMatrix& S)
{
    Certificate cert{"be-complex", "S v = 0 and v^T S = 0 for the signed sub-Pfaffian vector v", false, {}};
    std::vector<Polynomial> v = signed_subpfaffian_vector(S);
    const Frame& frame = v.front().frame();
    std::size_t m = S.size();
    bool ok = true;
    for (std::size_t i = 0; i < m; ++i) {
        Polynomial Sv(frame), vS(frame);
        for (std::size_t j = 0; j < m; ++j) {
            Sv += S[i][j] * v[j];
            vS += v[j] * S[j][i];
        }
        if (!Sv.is_zero()) {
            ok = false;
            cert.add("(S v)_" + std::to_string(i), Sv.to_string());
        }
        if (!vS.is_zero()) {
            ok = false;
            cert.add("(v^T S)_" + std::to_string(i), vS.to_string());
        }
    }
    cert.verdict = ok;
    std::string vec;
    for (std::size_t i = 0; i < m; ++i)
        vec += (i ? ", " : "") + v[i].to_string();
    cert.add("v", "(" + vec + ")");
    return cert;
}

Certificate be_complex_check(const TrivializedModule& M)
{
    require_flat(M);
    if (M.base.frame().dimension() % 2 != 0)
        throw DomainError("the extended matrix is odd only on an even number of coordinates");
    return be_complex_check(extended_skew_matrix(M));
}

Ideal higgs_obstruction_ideal(const TrivializedModule& M)
{
    unsigned r = M.base.generic_rank() / 2;
    const Frame& frame = M.base.frame();
    if (2 * r + 1 > frame.dimension())
        return Ideal(frame);
    return Ideal(frame, component_list(wedge(M.Z, M.base.power(r))));
}

HiggsReport higgs_report(const TrivializedModule& M)
{
    HiggsReport out{higgs_obstruction_ideal(M), {}, false};
    unsigned rank = M.base.generic_rank();
    bool adapted = out.top_rank.is_zero() || out.top_rank.basis().is_zero_ideal();
    for (unsigned k = 0; 2 * k < rank; ++k) {
        Ideal modulus = degeneracy_ideal(M.base, k).ideal;
        HiggsStratum s{k, false, reduce(wedge(M.Z, M.base.power(k)), modulus)};
        s.adapted = s.reduced.is_zero();
        adapted = adapted && s.adapted;
        out.strata.push_back(std::move(s));
    }
    out.adapted = adapted;
    return out;
}

Certificate hamiltonian_perturbation_check(const PoissonStructure& P, const Polynomial& f, unsigned k)
{
    Certificate cert{"hamiltonian-perturbation", "components of sigma#(df) ^ sigma^k lie in I(D_2k)", false, {}};
    cert.add("k", std::to_string(k));
    cert.add("f", f.to_string());
    PolyVector shift = wedge(hamiltonian_field(P, f), P.power(k));
    Ideal modulus(P.frame(), component_list(P.power(k + 1)));
    PolyVector rest = reduce(shift, modulus);
    cert.verdict = rest.is_zero();
    if (!cert.verdict)
        cert.add("remainder", rest.to_string());
    return cert;
}

} // namespace pdl
