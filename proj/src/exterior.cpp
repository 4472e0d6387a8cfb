#include "pdl/exterior.hpp"

#include <bit>
#include <optional>

namespace pdl {

namespace {

std::uint32_t below(std::size_t i) noexcept
{
    return static_cast<std::uint32_t>((std::uint64_t{1} << i) - 1);
}

std::uint32_t above(std::size_t i) noexcept
{
    return static_cast<std::uint32_t>(~((std::uint64_t{2} << i) - 1));
}

IndexSet full_set(std::size_t n) noexcept
{
    return below(n);
}

int parity_sign(unsigned count) noexcept
{
    return (count & 1u) ? -1 : 1;
}

// Sign of i_{d/dx_I}(dx_L) = sign * dx_{L \ I} for I inside L.
int insertion_sign(IndexSet I, IndexSet L) noexcept
{
    unsigned count = 0;
    for (IndexSet rest = I; rest; rest &= rest - 1)
        count += std::popcount(L & below(std::countr_zero(rest)));
    return parity_sign(count);
}

template <AlternatingKind K>
const char* kind_name()
{
    return K == AlternatingKind::vector ? "polyvector" : "form";
}

// "(x + y)*" style prefix for a coefficient; sets `negative` for a leading minus.
std::string coefficient_prefix(const Polynomial& c, bool& negative)
{
    negative = false;
    if (c.size() > 1)
        return "(" + c.to_string() + ")*";
    std::string s = c.to_string();
    if (!s.empty() && s[0] == '-') {
        negative = true;
        s.erase(0, 1);
    }
    return s == "1" ? std::string() : s + "*";
}

} // namespace

unsigned index_count(IndexSet s) noexcept
{
    return static_cast<unsigned>(std::popcount(s));
}

std::vector<std::size_t> indices(IndexSet s)
{
    std::vector<std::size_t> out;
    for (; s; s &= s - 1)
        out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    return out;
}

IndexSet index_set(std::initializer_list<std::size_t> idx)
{
    IndexSet s = 0;
    for (auto i : idx) {
        if (i >= kMaxVariables)
            throw DomainError("index out of range");
        s |= IndexSet{1} << i;
    }
    return s;
}

bool IndexLess::operator()(IndexSet a, IndexSet b) const noexcept
{
    if (a == b)
        return false;
    int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb)
        return ca < cb;
    IndexSet diff = a ^ b;
    return (a & (diff & (~diff + 1))) != 0;
}

std::vector<IndexSet> subsets_of_size(std::size_t n, unsigned k)
{
    std::vector<IndexSet> out;
    if (k > n)
        return out;
    std::vector<std::size_t> pos(k);
    for (unsigned i = 0; i < k; ++i)
        pos[i] = i;
    while (true) {
        IndexSet s = 0;
        for (auto p : pos)
            s |= IndexSet{1} << p;
        out.push_back(s);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && pos[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++pos[i];
        for (unsigned j = i + 1; j < k; ++j)
            pos[j] = pos[j - 1] + 1;
    }
    return out;
}

int wedge_sign(IndexSet I, IndexSet J) noexcept
{
    if (I & J)
        return 0;
    unsigned count = 0;
    for (IndexSet rest = J; rest; rest &= rest - 1)
        count += std::popcount(I & above(std::countr_zero(rest)));
    return parity_sign(count);
}

// ---------------------------------------------------------------- Alternating

template <AlternatingKind K>
Alternating<K>::Alternating(Frame frame, unsigned degree) : frame_(std::move(frame)), degree_(degree)
{
}

template <AlternatingKind K>
Alternating<K> Alternating<K>::scalar(const Polynomial& p)
{
    Alternating out(p.frame(), 0);
    out.add(0, p);
    return out;
}

template <AlternatingKind K>
Alternating<K> Alternating<K>::basis(const Frame& frame, std::initializer_list<std::size_t> idx,
                                     const Polynomial& coeff)
{
    require_same_frame(frame, coeff.frame(), kind_name<K>());
    Alternating out(frame, static_cast<unsigned>(idx.size()));
    IndexSet acc = 0;
    int sign = 1;
    for (auto i : idx) {
        if (i >= frame.dimension())
            throw DomainError("basis index out of range");
        IndexSet single = IndexSet{1} << i;
        sign *= wedge_sign(acc, single);
        acc |= single;
    }
    if (sign != 0)
        out.add(acc, sign > 0 ? coeff : -coeff);
    return out;
}

template <AlternatingKind K>
Alternating<K> Alternating<K>::basis(const Frame& frame, IndexSet set, const Polynomial& coeff)
{
    if (set & ~full_set(frame.dimension()))
        throw DomainError("basis index out of range");
    Alternating out(frame, index_count(set));
    out.add(set, coeff);
    return out;
}

template <AlternatingKind K>
Polynomial Alternating<K>::component(IndexSet set) const
{
    auto it = components_.find(set);
    return it == components_.end() ? Polynomial(frame_) : it->second;
}

template <AlternatingKind K>
void Alternating<K>::add(IndexSet set, const Polynomial& coeff)
{
    require_same_frame(frame_, coeff.frame(), kind_name<K>());
    if (index_count(set) != degree_)
        throw DomainError("component index set does not match the degree");
    if (coeff.is_zero())
        return;
    auto [it, inserted] = components_.try_emplace(set, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero())
            components_.erase(it);
    }
}

template <AlternatingKind K>
Polynomial Alternating<K>::as_polynomial() const
{
    if (degree_ != 0)
        throw DomainError(std::string("degree ") + std::to_string(degree_) + " " + kind_name<K>() +
                          " is not a function");
    return component(0);
}

template <AlternatingKind K>
Alternating<K> Alternating<K>::map_coefficients(const std::function<Polynomial(const Polynomial&)>& fn) const
{
    Alternating out(frame_, degree_);
    for (const auto& [set, c] : components_)
        out.add(set, fn(c));
    return out;
}

template <AlternatingKind K>
void Alternating<K>::require_compatible(const Alternating& other, const char* what) const
{
    require_same_frame(frame_, other.frame_, what);
    if (degree_ != other.degree_ && !other.is_zero() && !is_zero())
        throw DomainError(std::string(what) + ": degrees " + std::to_string(degree_) + " and " +
                          std::to_string(other.degree_) + " differ");
}

template <AlternatingKind K>
Alternating<K>& Alternating<K>::operator+=(const Alternating& other)
{
    require_compatible(other, "sum");
    if (is_zero())
        degree_ = other.degree_;
    for (const auto& [set, c] : other.components_)
        add(set, c);
    return *this;
}

template <AlternatingKind K>
Alternating<K>& Alternating<K>::operator-=(const Alternating& other)
{
    require_compatible(other, "difference");
    if (is_zero())
        degree_ = other.degree_;
    for (const auto& [set, c] : other.components_)
        add(set, -c);
    return *this;
}

template <AlternatingKind K>
Alternating<K>& Alternating<K>::operator*=(const Polynomial& f)
{
    require_same_frame(frame_, f.frame(), "scalar product");
    Components next;
    for (auto& [set, c] : components_) {
        Polynomial p = c * f;
        if (!p.is_zero())
            next.emplace(set, std::move(p));
    }
    components_ = std::move(next);
    return *this;
}

template <AlternatingKind K>
Alternating<K>& Alternating<K>::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        components_.clear();
        return *this;
    }
    for (auto& [set, p] : components_)
        p *= c;
    return *this;
}

template <AlternatingKind K>
std::string Alternating<K>::to_string() const
{
    if (components_.empty())
        return "0";
    if (degree_ == 0)
        return component(0).to_string();
    std::string out;
    bool first = true;
    for (const auto& [set, c] : components_) {
        bool negative = false;
        std::string prefix = coefficient_prefix(c, negative);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        out += prefix;
        bool first_index = true;
        for (auto i : indices(set)) {
            if (!first_index)
                out += "^";
            first_index = false;
            out += (K == AlternatingKind::vector ? "d/d" : "d") + frame_.name(i);
        }
    }
    return out;
}

template class Alternating<AlternatingKind::vector>;
template class Alternating<AlternatingKind::form>;

// ---------------------------------------------------------------- products

namespace {

template <AlternatingKind K>
Alternating<K> wedge_impl(const Alternating<K>& a, const Alternating<K>& b)
{
    require_same_frame(a.frame(), b.frame(), "wedge");
    Alternating<K> out(a.frame(), a.degree() + b.degree());
    for (const auto& [I, p] : a.components())
        for (const auto& [J, q] : b.components()) {
            int s = wedge_sign(I, J);
            if (s == 0)
                continue;
            Polynomial c = p * q;
            out.add(I | J, s > 0 ? c : -c);
        }
    return out;
}

} // namespace

PolyVector wedge(const PolyVector& a, const PolyVector& b)
{
    return wedge_impl(a, b);
}

DiffForm wedge(const DiffForm& a, const DiffForm& b)
{
    return wedge_impl(a, b);
}

PolyVector power(const PolyVector& a, unsigned k)
{
    PolyVector out = PolyVector::scalar(Polynomial::constant(a.frame(), 1));
    for (unsigned i = 0; i < k; ++i)
        out = wedge(out, a);
    return out;
}

DiffForm contract(const PolyVector& U, const DiffForm& omega)
{
    require_same_frame(U.frame(), omega.frame(), "contraction");
    if (U.degree() > omega.degree())
        throw DomainError("cannot contract a degree " + std::to_string(U.degree()) + " polyvector into a degree " +
                          std::to_string(omega.degree()) + " form");
    DiffForm out(U.frame(), omega.degree() - U.degree());
    for (const auto& [I, p] : U.components())
        for (const auto& [L, q] : omega.components()) {
            if ((I & L) != I)
                continue;
            Polynomial c = p * q;
            out.add(L & ~I, insertion_sign(I, L) > 0 ? c : -c);
        }
    return out;
}

PolyVector contract(const DiffForm& xi, const PolyVector& U)
{
    require_same_frame(xi.frame(), U.frame(), "contraction");
    if (xi.degree() > U.degree())
        throw DomainError("cannot contract a degree " + std::to_string(xi.degree()) + " form into a degree " +
                          std::to_string(U.degree()) + " polyvector");
    PolyVector out(U.frame(), U.degree() - xi.degree());
    for (const auto& [J, p] : xi.components())
        for (const auto& [I, q] : U.components()) {
            if ((J & I) != J)
                continue;
            IndexSet Kset = I & ~J;
            Polynomial c = p * q;
            out.add(Kset, wedge_sign(J, Kset) > 0 ? c : -c);
        }
    return out;
}

Polynomial pairing(const PolyVector& U, const DiffForm& omega)
{
    require_same_frame(U.frame(), omega.frame(), "pairing");
    if (U.degree() != omega.degree())
        throw DomainError("pairing needs equal degrees");
    Polynomial out(U.frame());
    for (const auto& [I, p] : U.components()) {
        auto it = omega.components().find(I);
        if (it != omega.components().end())
            out += p * it->second;
    }
    return out;
}

DiffForm exterior_d(const DiffForm& omega)
{
    const Frame& frame = omega.frame();
    DiffForm out(frame, omega.degree() + 1);
    for (const auto& [L, p] : omega.components())
        for (std::size_t i = 0; i < frame.dimension(); ++i) {
            IndexSet single = IndexSet{1} << i;
            int s = wedge_sign(single, L);
            if (s == 0)
                continue;
            Polynomial c = diff(p, i);
            if (!c.is_zero())
                out.add(single | L, s > 0 ? c : -c);
        }
    return out;
}

DiffForm differential(const Polynomial& f)
{
    return exterior_d(DiffForm::scalar(f));
}

DiffForm volume_form(const Frame& frame)
{
    return DiffForm::basis(frame, full_set(frame.dimension()), Polynomial::constant(frame, 1));
}

PolyVector solve_volume_contraction(const DiffForm& beta)
{
    const Frame& frame = beta.frame();
    std::size_t n = frame.dimension();
    if (beta.degree() > n)
        throw DomainError("form degree exceeds the frame dimension");
    IndexSet all = full_set(n);
    PolyVector out(frame, static_cast<unsigned>(n) - beta.degree());
    for (const auto& [L, p] : beta.components()) {
        IndexSet I = all & ~L;
        out.add(I, insertion_sign(I, all) > 0 ? p : -p);
    }
    return out;
}

Polynomial apply(const PolyVector& Z, const Polynomial& f)
{
    if (Z.degree() != 1)
        throw DomainError("only vector fields act on functions");
    return pairing(Z, differential(f));
}

// ---------------------------------------------------------------- Schouten

namespace {

// Right and left derivatives of the odd monomial xi_I with respect to xi_i.
int right_sign(IndexSet I, std::size_t i) noexcept
{
    return parity_sign(std::popcount(I & above(i)));
}

int left_sign(IndexSet I, std::size_t i) noexcept
{
    return parity_sign(std::popcount(I & below(i)));
}

} // namespace

PolyVector schouten(const PolyVector& U, const PolyVector& V)
{
    require_same_frame(U.frame(), V.frame(), "Schouten bracket");
    const Frame& frame = U.frame();
    if (U.degree() + V.degree() == 0)
        return PolyVector(frame, 0);
    PolyVector out(frame, U.degree() + V.degree() - 1);
    std::size_t n = frame.dimension();
    for (const auto& [I, a] : U.components())
        for (const auto& [J, b] : V.components())
            for (std::size_t i = 0; i < n; ++i) {
                IndexSet single = IndexSet{1} << i;
                if (I & single) {
                    IndexSet rest = I & ~single;
                    int s = right_sign(I, i) * wedge_sign(rest, J);
                    if (s != 0) {
                        Polynomial c = a * diff(b, i);
                        if (!c.is_zero())
                            out.add(rest | J, s > 0 ? c : -c);
                    }
                }
                if (J & single) {
                    IndexSet rest = J & ~single;
                    int s = left_sign(J, i) * wedge_sign(I, rest);
                    if (s != 0) {
                        Polynomial c = diff(a, i) * b;
                        if (!c.is_zero())
                            out.add(I | rest, s > 0 ? -c : c);
                    }
                }
            }
    return out;
}

namespace {

// [i_U, d] eta = i_U d eta - (-1)^u d i_U eta, terms of impossible degree dropped.
std::optional<DiffForm> commutator_iu_d(const PolyVector& U, const DiffForm& eta)
{
    unsigned u = U.degree();
    if (eta.degree() + 1 < u)
        return std::nullopt;
    DiffForm out = contract(U, exterior_d(eta));
    if (eta.degree() >= u) {
        DiffForm second = exterior_d(contract(U, eta));
        out = (u % 2 == 0) ? out - second : out + second;
    }
    return out;
}

} // namespace

PolyVector schouten_oracle(const PolyVector& U, const PolyVector& V)
{
    require_same_frame(U.frame(), V.frame(), "Schouten bracket");
    const Frame& frame = U.frame();
    unsigned u = U.degree(), v = V.degree();
    if (u + v == 0)
        return PolyVector(frame, 0);
    unsigned p = u + v - 1;
    PolyVector out(frame, p);
    Polynomial one = Polynomial::constant(frame, 1);
    int degree_sign = parity_sign(p * (p - 1) / 2 % 2);
    int commute_sign = parity_sign(((1 + u) * v) % 2); // (-1)^{(1-u)v}
    for (IndexSet L : subsets_of_size(frame.dimension(), p)) {
        DiffForm omega = DiffForm::basis(frame, L, one);
        DiffForm value(frame, 0);
        if (v <= p)
            if (auto first = commutator_iu_d(U, contract(V, omega)))
                value += *first;
        if (auto a_omega = commutator_iu_d(U, omega)) {
            DiffForm second = contract(V, *a_omega);
            value = commute_sign > 0 ? value - second : value + second;
        }
        Polynomial w = value.as_polynomial();
        out.add(L, degree_sign > 0 ? w : -w);
    }
    return out;
}

DiffForm lie_derivative(const PolyVector& Z, const DiffForm& omega)
{
    if (Z.degree() != 1)
        throw DomainError("Lie derivative along a polyvector of degree " + std::to_string(Z.degree()));
    DiffForm out = contract(Z, exterior_d(omega));
    if (omega.degree() >= 1)
        out += exterior_d(contract(Z, omega));
    return out;
}

PolyVector lie_derivative(const PolyVector& Z, const PolyVector& T)
{
    if (Z.degree() != 1)
        throw DomainError("Lie derivative along a polyvector of degree " + std::to_string(Z.degree()));
    return schouten(Z, T);
}

// ---------------------------------------------------------------- jets

bool JetTensor::is_zero() const
{
    for (const auto& c : components)
        if (!c.is_zero())
            return false;
    return true;
}

JetTensor jet_derivative(const PolyVector& V)
{
    JetTensor out{V.frame(), V.degree(), {}};
    for (std::size_t i = 0; i < V.frame().dimension(); ++i)
        out.components.push_back(V.map_coefficients([i](const Polynomial& c) { return diff(c, i); }));
    return out;
}

PolyVector trace_contraction(const JetTensor& T)
{
    if (T.degree == 0)
        throw DomainError("trace contraction needs polyvectors of degree at least 1");
    if (T.components.size() != T.frame.dimension())
        throw DomainError("jet tensor has the wrong number of components");
    Polynomial one = Polynomial::constant(T.frame, 1);
    PolyVector out(T.frame, T.degree - 1);
    for (std::size_t i = 0; i < T.components.size(); ++i) {
        if (T.components[i].degree() != T.degree && !T.components[i].is_zero())
            throw DomainError("jet tensor components have mixed degrees");
        if (!T.components[i].is_zero())
            out += contract(DiffForm::basis(T.frame, {i}, one), T.components[i]);
    }
    return out;
}

} // namespace pdl
