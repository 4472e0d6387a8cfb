#pragma once

// Ideals and reduced Groebner bases over Q.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pdl/ring.hpp"

namespace pdl {

/// Default number of reduction steps before a basis computation gives up.
inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

std::uint64_t default_step_budget() noexcept;
void set_default_step_budget(std::uint64_t steps) noexcept;

struct GroebnerOptions {
    std::uint64_t step_budget = default_step_budget();
};

namespace detail {
// Terms sorted descending in some monomial order, leading coefficient one.
struct OrderedPoly {
    std::vector<Term> terms;
    std::uint32_t lead_support = 0;
};
} // namespace detail

/// Reduced, monic Groebner basis. Elements are sorted by increasing leading
/// monomial, so the basis of a given ideal and order is unique.
class GroebnerBasis {
public:
    const Frame& frame() const noexcept { return frame_; }
    const MonomialOrder& order() const noexcept { return order_; }
    const std::vector<Polynomial>& elements() const noexcept { return elements_; }
    std::vector<Monomial> leading_monomials() const;

    bool is_unit() const noexcept;
    bool is_zero_ideal() const noexcept { return elements_.empty(); }

    /// Remainder of full multivariate division by the basis.
    Polynomial normal_form(const Polynomial& p) const;
    bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

    /// Reduction steps spent building the basis.
    std::uint64_t steps() const noexcept { return steps_; }

private:
    friend GroebnerBasis buchberger(const Frame&, std::span<const Polynomial>, const MonomialOrder&,
                                    const GroebnerOptions&);

    Frame frame_;
    MonomialOrder order_ = MonomialOrder::grevlex();
    std::vector<Polynomial> elements_;
    std::vector<detail::OrderedPoly> ordered_;
    std::uint64_t steps_ = 0;
};

/// Buchberger's algorithm with Gebauer-Moeller pair elimination and the
/// normal selection strategy. Throws ResourceExhausted past the budget.
GroebnerBasis buchberger(const Frame& frame, std::span<const Polynomial> gens,
                         const MonomialOrder& order = MonomialOrder::grevlex(),
                         const GroebnerOptions& options = {});

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis);

class Ideal {
public:
    explicit Ideal(Frame frame, std::vector<Polynomial> generators = {});

    static Ideal unit(const Frame& frame);

    const Frame& frame() const noexcept { return frame_; }
    const std::vector<Polynomial>& generators() const noexcept { return generators_; }

    /// The grevlex basis, computed once and shared between copies.
    const GroebnerBasis& basis() const;

    bool contains(const Polynomial& p) const;
    bool is_unit() const { return basis().is_unit(); }
    bool is_zero() const { return generators_.empty(); }

    Ideal operator+(const Ideal& other) const;

    std::string to_string() const;

private:
    struct Cache;

    Frame frame_;
    std::vector<Polynomial> generators_;
    std::shared_ptr<Cache> cache_;
};

/// J subset of I.
bool ideal_contains(const Ideal& I, const Ideal& J);
bool ideal_equal(const Ideal& I, const Ideal& J);

/// p in the radical of I, decided with the Rabinowitsch trick.
bool radical_member(const Ideal& I, const Polynomial& p, const GroebnerOptions& options = {});

/// Generators of I intersected with the subring in `keep` (same frame).
Ideal eliminate(const Ideal& I, const std::vector<std::string>& keep, const GroebnerOptions& options = {});

struct HilbertData {
    /// Coefficients (constant first) of N(t) with series N(t) / (1 - t)^n.
    std::vector<Integer> numerator;
    /// Krull dimension of the affine cone; -1 for the unit ideal.
    int affine_dimension = 0;
    /// Dimension of the projective scheme; -1 when it is empty.
    int dimension = 0;
    Integer degree;
};

/// Hilbert series of the graded quotient ring; generators must be homogeneous.
HilbertData hilbert(const Ideal& I);

/// (f, df/dx_1, ..., df/dx_n).
Ideal jacobian_ideal(const Polynomial& f);

/// Header lines "frame ..." and "order ...", then one generator per line.
std::string serialize(const Ideal& I, const MonomialOrder& order = MonomialOrder::grevlex());

} // namespace pdl
