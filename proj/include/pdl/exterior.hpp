#pragma once

// Polyvector fields and differential forms with polynomial coefficients.
//
// Sign convention: for a decomposable polyvector, i_{U^V} = i_U o i_V, and a
// single vector field inserts into the first slot, so i_{d/dx}(dx ^ eta) = eta.
// The pairing <d/dx_I, dx_I> is +1; contraction of equal degrees k therefore
// equals (-1)^{k(k-1)/2} times the pairing.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "pdl/ring.hpp"

namespace pdl {

/// Strictly increasing index tuple, stored as a bit mask.
using IndexSet = std::uint32_t;

unsigned index_count(IndexSet s) noexcept;
std::vector<std::size_t> indices(IndexSet s);
IndexSet index_set(std::initializer_list<std::size_t> idx);

/// Orders index sets by size, then lexicographically as increasing tuples.
struct IndexLess {
    bool operator()(IndexSet a, IndexSet b) const noexcept;
};

/// All index sets of the given size in [0, n), in IndexLess order.
std::vector<IndexSet> subsets_of_size(std::size_t n, unsigned k);

/// Sign e with e_I ^ e_J = e * e_{I u J}; zero when I and J overlap.
int wedge_sign(IndexSet I, IndexSet J) noexcept;

enum class AlternatingKind { vector, form };

template <AlternatingKind Kind>
class Alternating {
public:
    using Components = std::map<IndexSet, Polynomial, IndexLess>;

    Alternating() = default;
    Alternating(Frame frame, unsigned degree);

    static Alternating scalar(const Polynomial& p);
    /// coeff times the wedge of the basis elements at `idx`, in the given
    /// (not necessarily sorted) order.
    static Alternating basis(const Frame& frame, std::initializer_list<std::size_t> idx,
                             const Polynomial& coeff);
    static Alternating basis(const Frame& frame, IndexSet set, const Polynomial& coeff);

    const Frame& frame() const noexcept { return frame_; }
    unsigned degree() const noexcept { return degree_; }
    const Components& components() const noexcept { return components_; }
    bool is_zero() const noexcept { return components_.empty(); }

    /// Coefficient at an index set (zero when absent).
    Polynomial component(IndexSet set) const;
    void add(IndexSet set, const Polynomial& coeff);

    /// The coefficient of a degree-0 element.
    Polynomial as_polynomial() const;

    Alternating map_coefficients(const std::function<Polynomial(const Polynomial&)>& fn) const;

    Alternating& operator+=(const Alternating& other);
    Alternating& operator-=(const Alternating& other);
    Alternating& operator*=(const Polynomial& f);
    Alternating& operator*=(const Rational& c);

    friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
    friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
    friend Alternating operator-(Alternating a) { return a *= Rational(-1); }
    friend Alternating operator*(const Polynomial& f, Alternating a) { return a *= f; }
    friend Alternating operator*(const Rational& c, Alternating a) { return a *= c; }

    friend bool operator==(const Alternating& a, const Alternating& b)
    {
        if (!(a.frame_ == b.frame_))
            return false;
        // Zero is the same value in every degree.
        if (a.is_zero() || b.is_zero())
            return a.is_zero() && b.is_zero();
        return a.degree_ == b.degree_ && a.components_ == b.components_;
    }

    /// "x*d/dx^d/dz + y*d/dy^d/dz" or "x*dy^dz".
    std::string to_string() const;

private:
    void require_compatible(const Alternating& other, const char* what) const;

    Frame frame_;
    unsigned degree_ = 0;
    Components components_;
};

using PolyVector = Alternating<AlternatingKind::vector>;
using DiffForm = Alternating<AlternatingKind::form>;

extern template class Alternating<AlternatingKind::vector>;
extern template class Alternating<AlternatingKind::form>;

PolyVector wedge(const PolyVector& a, const PolyVector& b);
DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// a ^ a ^ ... (k factors); the scalar 1 for k = 0.
PolyVector power(const PolyVector& a, unsigned k);

/// i_U omega, a form of degree deg(omega) - deg(U).
DiffForm contract(const PolyVector& U, const DiffForm& omega);
/// i_xi U, the polyvector adjoint to wedging: <i_xi U, w> = <U, xi ^ w>.
PolyVector contract(const DiffForm& xi, const PolyVector& U);
/// <U, omega> for equal degrees.
Polynomial pairing(const PolyVector& U, const DiffForm& omega);

DiffForm exterior_d(const DiffForm& omega);
/// df as a 1-form.
DiffForm differential(const Polynomial& f);
DiffForm volume_form(const Frame& frame);
/// The polyvector V with i_V (dx_1 ^ ... ^ dx_n) = beta.
PolyVector solve_volume_contraction(const DiffForm& beta);

/// The vector field's derivation applied to a function.
Polynomial apply(const PolyVector& Z, const Polynomial& f);

/// Schouten bracket by the odd-variable coordinate formula.
PolyVector schouten(const PolyVector& U, const PolyVector& V);
/// The same bracket computed from i_{[U,V]} = [[i_U, d], i_V] on coordinate forms.
PolyVector schouten_oracle(const PolyVector& U, const PolyVector& V);

/// Cartan formula i_Z d + d i_Z.
DiffForm lie_derivative(const PolyVector& Z, const DiffForm& omega);
/// [Z, T].
PolyVector lie_derivative(const PolyVector& Z, const PolyVector& T);

/// Element of Omega^1 (x) D^m: one polyvector of degree m per coordinate.
struct JetTensor {
    Frame frame;
    unsigned degree = 0;
    std::vector<PolyVector> components;

    bool is_zero() const;
};

/// Component at x_i is the coefficientwise derivative d/dx_i of V.
JetTensor jet_derivative(const PolyVector& V);
/// Sum over i of i_{dx_i} T(x_i).
PolyVector trace_contraction(const JetTensor& T);

} // namespace pdl
