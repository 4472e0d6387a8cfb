#pragma once

// Poisson line modules in a fixed trivialization, where the connection is
// determined by a single vector field Z.

#include <optional>
#include <vector>

#include "pdl/certificate.hpp"
#include "pdl/poisson.hpp"

namespace pdl {

struct TrivializedModule {
    PoissonStructure base;
    PolyVector Z;
    /// L_Z sigma = 0.
    bool flat = false;
    /// L_Z sigma, zero when flat.
    PolyVector flatness_witness;
};

/// Throws DomainError unless Z is a vector field on the frame of P.
TrivializedModule make_module(const PoissonStructure& P, const PolyVector& Z);

/// The modular vector field: i_Z mu = -d(i_sigma mu) for mu = dx_1 ^ ... ^ dx_n.
PolyVector modular_field(const PoissonStructure& P);
TrivializedModule canonical_module(const PoissonStructure& P);

/// (n+1)x(n+1) skew matrix with Z in row 0 and the coefficients of sigma below.
PolyMatrix extended_skew_matrix(const TrivializedModule& M);

struct ResidueClass {
    unsigned k = 0;
    /// Z ^ sigma^k.
    PolyVector representative;
    /// I(D_2k).
    Ideal modulus;
    /// representative with every component in normal form mod the modulus.
    PolyVector reduced;

    bool is_zero() const { return reduced.is_zero(); }
    friend bool operator==(const ResidueClass& a, const ResidueClass& b);
};

/// Requires a flat module and 2k < generic rank; throws DomainError otherwise.
ResidueClass residue(const TrivializedModule& M, unsigned k);

struct ModuleDegeneracyIdeal {
    unsigned k = 0;
    /// I(D_2k) + components of Z ^ sigma^k.
    Ideal ideal;
    /// (2k+2)-Pfaffians of the extended skew matrix.
    Ideal pfaffian_ideal;
    Ideal lower;  // I(D_2k)
    Ideal upper;  // I(D_{2k-2}), the unit ideal for k = 0
    bool pfaffian_certified = false;
    bool chain_certified = false;
};

/// I(AD_2k). Requires a flat module and 2k+1 <= dimension. Throws
/// ConsistencyError if the Pfaffian cross-check or the chain
/// I(D_2k) in I(AD_2k) in I(D_{2k-2}) fails.
ModuleDegeneracyIdeal module_degeneracy_ideal(const TrivializedModule& M, unsigned k);

/// Z ^ sigma^k for the canonical module against -1/(k+1) Tr(D sigma^{k+1}),
/// compared mod I(D_2k). Requires 2k+2 <= dimension.
Certificate modular_residue_formula_check(const PoissonStructure& P, unsigned k);

/// For sigma generically symplectic on 2n coordinates: the Jacobian ideal of
/// the Pfaffian equals I(AD_{2n-2}) of the canonical module.
Certificate singular_equals_module_locus_check(const PoissonStructure& P);

/// v_i = (-1)^i Pf(S with row and column i removed), for odd skew S.
std::vector<Polynomial> signed_subpfaffian_vector(const PolyMatrix& S);
/// S v = 0 and v^T S = 0.
Certificate be_complex_check(const PolyMatrix& S);
/// The same check on the extended matrix of a flat module on an even frame.
Certificate be_complex_check(const TrivializedModule& M);

/// Components of Z ^ sigma^r, 2r the generic rank: Z is tangent to the
/// generic symplectic leaves exactly off its zero locus.
Ideal higgs_obstruction_ideal(const TrivializedModule& M);

struct HiggsStratum {
    unsigned k = 0;
    /// Z ^ sigma^k vanishes mod I(D_2k).
    bool adapted = false;
    PolyVector reduced;
};

struct HiggsReport {
    Ideal top_rank;
    /// One entry per degeneracy level below the generic rank.
    std::vector<HiggsStratum> strata;
    bool adapted = false;
};

/// The top-rank ideal together with the residue of every lower stratum.
HiggsReport higgs_report(const TrivializedModule& M);

/// Components of hamiltonian_field(f) ^ sigma^k lie in the ideal of the
/// components of sigma^{k+1}.
Certificate hamiltonian_perturbation_check(const PoissonStructure& P, const Polynomial& f, unsigned k);

} // namespace pdl
