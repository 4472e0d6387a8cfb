#pragma once

// Poisson bivectors, degeneracy ideals and Poisson subschemes.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdl/exterior.hpp"
#include "pdl/groebner.hpp"

namespace pdl {

/// A bivector with [sigma, sigma] = 0, verified at construction.
class PoissonStructure {
public:
    /// Throws DomainError (with the offending trivector) unless sigma is Poisson.
    explicit PoissonStructure(PolyVector sigma);

    const Frame& frame() const noexcept { return sigma_.frame(); }
    const PolyVector& sigma() const noexcept { return sigma_; }

    /// sigma^k, cached.
    const PolyVector& power(unsigned k) const;
    /// 2r for the largest r with sigma^r != 0.
    unsigned generic_rank() const;

    /// sigma(dx_i ^ dx_j).
    Polynomial entry(std::size_t i, std::size_t j) const;

private:
    struct Cache;

    PolyVector sigma_;
    std::shared_ptr<Cache> cache_;
};

struct JacobiResult {
    /// [sigma, sigma]; zero exactly when sigma is Poisson.
    PolyVector witness;
    std::optional<PoissonStructure> structure;

    bool ok() const noexcept { return structure.has_value(); }
};

JacobiResult jacobi_check(const PolyVector& sigma);

/// {f, g} = sigma(df ^ dg).
Polynomial bracket(const PoissonStructure& P, const Polynomial& f, const Polynomial& g);
/// The anchor applied to a one-form: i_alpha sigma.
PolyVector anchor(const PoissonStructure& P, const DiffForm& alpha);
/// Z_f = anchor(df), so that Z_f(g) = {f, g}.
PolyVector hamiltonian_field(const PoissonStructure& P, const Polynomial& f);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// [sigma(dx_i ^ dx_j)].
PolyMatrix coefficient_matrix(const PoissonStructure& P);

/// Expansion along the first row; throws DomainError for odd or non-skew input.
Polynomial pfaffian(const PolyMatrix& M);
/// Pfaffians of all principal submatrices of the given even size, indexed
/// by row sets in IndexLess order (zeros included).
std::vector<std::pair<IndexSet, Polynomial>> sub_pfaffians(const PolyMatrix& M, unsigned size);

struct DegeneracyIdeal {
    unsigned k = 0;
    /// Components of sigma^{k+1}.
    Ideal ideal;
    /// (2k+2)-Pfaffians of the coefficient matrix.
    Ideal pfaffian_ideal;
    /// The two generating sets were shown to generate the same ideal.
    bool certified = false;
};

/// I(D_2k). When 2k+2 exceeds the dimension sigma^{k+1} vanishes and the
/// zero ideal is returned.
DegeneracyIdeal degeneracy_ideal(const PoissonStructure& P, unsigned k);

struct DegeneracyTower {
    unsigned generic_rank = 0;
    /// levels[k] = I(D_2k) for 2k < generic rank.
    std::vector<DegeneracyIdeal> levels;
    /// I(D_2k) inside I(D_{2k-2}) for every consecutive pair.
    bool chain_verified = false;
};

DegeneracyTower degeneracy_tower(const PoissonStructure& P);

struct SubschemeWitness {
    Polynomial generator;
    /// "{g, x}" or the field that moves g out of the ideal.
    std::string operation;
    /// Normal form of the escaping element.
    Polynomial remainder;
};

struct SubschemeReport {
    Ideal ideal;
    bool is_poisson = false;
    /// Set by strong_subscheme_check; relative to `fields`.
    std::optional<bool> is_strong;
    std::vector<PolyVector> fields;
    std::string field_set;
    std::vector<SubschemeWitness> witnesses;
};

/// Checks {g, x_j} in I for every generator g and coordinate x_j.
SubschemeReport subscheme_check(const PoissonStructure& P, const Ideal& I);

/// subscheme_check plus Z(g) in I for each supplied field. Throws DomainError
/// naming a field that is not Poisson.
SubschemeReport strong_subscheme_check(const PoissonStructure& P, const Ideal& I,
                                       const std::vector<PolyVector>& fields, const std::string& field_set);

/// Basis of {Z : L_Z sigma = 0} among fields with coefficients of degree <= D.
std::vector<PolyVector> poisson_fields_up_to_degree(const PoissonStructure& P, unsigned D);

/// Structure constants c_ij^k of a Lie algebra, [e_i, e_j] = sum_k c_ij^k e_k.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dimension);

    std::size_t dimension() const noexcept { return n_; }
    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    /// Sets c_ij^k and c_ji^k = -c_ij^k.
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& value);

    /// Throws DomainError unless the bracket satisfies the Jacobi identity.
    void validate() const;

private:
    std::size_t n_;
    std::vector<Rational> c_;
};

/// sigma(dx_i ^ dx_j) = sum_k c_ij^k x_k on the dual space, coordinates named by `frame`.
PoissonStructure kks_from_structure_constants(const StructureConstants& C, const Frame& frame);

/// Basis h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
StructureConstants sl2_constants();
Frame sl2_frame();
/// Basis e12, e13, e21, e23, e31, e32, h1 = E11 - E22, h2 = E22 - E33.
StructureConstants sl3_constants();
Frame sl3_frame();

} // namespace pdl
