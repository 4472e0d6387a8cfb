#include "pdl/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>

namespace pdl {

namespace {

std::atomic<std::uint64_t> g_default_budget{kDefaultStepBudget};

struct OrderGreater {
    const MonomialOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const noexcept { return order->compare(a, b) > 0; }
};

using WorkMap = std::map<Monomial, Rational, OrderGreater>;

class StepCounter {
public:
    explicit StepCounter(std::uint64_t budget) : budget_(budget) {}

    void tick()
    {
        if (++steps_ > budget_)
            throw ResourceExhausted("Groebner basis computation exceeded the budget of " + std::to_string(budget_) +
                                    " reduction steps");
    }
    std::uint64_t steps() const noexcept { return steps_; }

private:
    std::uint64_t budget_;
    std::uint64_t steps_ = 0;
};

detail::OrderedPoly make_ordered(const Polynomial& p, const MonomialOrder& order)
{
    detail::OrderedPoly out;
    out.terms = p.terms();
    if (order.kind() != MonomialOrder::Kind::grevlex)
        std::sort(out.terms.begin(), out.terms.end(),
                  [&](const Term& a, const Term& b) { return order.greater(a.monomial, b.monomial); });
    if (!out.terms.empty()) {
        Rational inv = 1 / out.terms.front().coeff;
        for (auto& t : out.terms)
            t.coeff *= inv;
        out.lead_support = out.terms.front().monomial.support();
    }
    return out;
}

void make_monic(detail::OrderedPoly& p)
{
    if (p.terms.empty())
        return;
    if (p.terms.front().coeff != 1) {
        Rational inv = 1 / p.terms.front().coeff;
        for (auto& t : p.terms)
            t.coeff *= inv;
    }
    p.lead_support = p.terms.front().monomial.support();
}

const detail::OrderedPoly* find_reducer(const Monomial& m, const std::vector<const detail::OrderedPoly*>& reducers)
{
    std::uint32_t support = m.support();
    for (const auto* g : reducers)
        if ((g->lead_support & ~support) == 0 && g->terms.front().monomial.divides(m))
            return g;
    return nullptr;
}

// Full reduction (leading and tail terms). The result is sorted descending
// in `order`; it is not normalized to be monic.
std::vector<Term> reduce(const std::vector<Term>& p, const std::vector<const detail::OrderedPoly*>& reducers,
                         const MonomialOrder& order, StepCounter& counter)
{
    WorkMap work(OrderGreater{&order});
    for (const auto& t : p)
        work.emplace(t.monomial, t.coeff);
    std::vector<Term> remainder;
    while (!work.empty()) {
        auto it = work.begin();
        const detail::OrderedPoly* g = find_reducer(it->first, reducers);
        if (!g) {
            remainder.push_back(Term{it->first, std::move(it->second)});
            work.erase(it);
            continue;
        }
        counter.tick();
        Monomial q = it->first / g->terms.front().monomial;
        Rational c = it->second; // g is monic
        work.erase(it);
        for (std::size_t k = 1; k < g->terms.size(); ++k) {
            Monomial m = q * g->terms[k].monomial;
            Rational delta = c * g->terms[k].coeff;
            auto [pos, inserted] = work.try_emplace(m, 0);
            pos->second -= delta;
            if (sgn(pos->second) == 0)
                work.erase(pos);
        }
    }
    return remainder;
}

std::vector<Term> s_polynomial(const detail::OrderedPoly& f, const detail::OrderedPoly& g,
                               const MonomialOrder& order)
{
    const Monomial& lf = f.terms.front().monomial;
    const Monomial& lg = g.terms.front().monomial;
    Monomial l = lcm(lf, lg);
    Monomial uf = l / lf;
    Monomial ug = l / lg;
    WorkMap work(OrderGreater{&order});
    for (std::size_t k = 1; k < f.terms.size(); ++k)
        work.emplace(uf * f.terms[k].monomial, f.terms[k].coeff);
    for (std::size_t k = 1; k < g.terms.size(); ++k) {
        auto [pos, inserted] = work.try_emplace(ug * g.terms[k].monomial, 0);
        pos->second -= g.terms[k].coeff;
        if (sgn(pos->second) == 0)
            work.erase(pos);
    }
    std::vector<Term> out;
    out.reserve(work.size());
    for (auto& [m, c] : work)
        out.push_back(Term{m, c});
    return out;
}

struct CriticalPair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
};

class BuchbergerState {
public:
    BuchbergerState(const MonomialOrder& order, std::uint64_t budget) : order_(order), counter_(budget) {}

    std::vector<const detail::OrderedPoly*> active_reducers() const
    {
        std::vector<const detail::OrderedPoly*> out;
        for (std::size_t k = 0; k < polys_.size(); ++k)
            if (active_[k])
                out.push_back(&polys_[k]);
        return out;
    }

    // Returns false once the unit ideal is detected.
    bool insert(std::vector<Term> terms)
    {
        detail::OrderedPoly h;
        h.terms = reduce(terms, active_reducers(), order_, counter_);
        if (h.terms.empty())
            return true;
        make_monic(h);
        if (h.terms.front().monomial.degree() == 0) {
            polys_.assign(1, h);
            active_.assign(1, true);
            pairs_.clear();
            return false;
        }
        update(std::move(h));
        return true;
    }

    bool run()
    {
        while (!pairs_.empty()) {
            auto best = pairs_.begin();
            for (auto it = std::next(pairs_.begin()); it != pairs_.end(); ++it) {
                int c = order_.compare(it->lcm, best->lcm);
                if (c < 0 || (c == 0 && std::tie(it->i, it->j) < std::tie(best->i, best->j)))
                    best = it;
            }
            CriticalPair pair = *best;
            pairs_.erase(best);
            if (!insert(s_polynomial(polys_[pair.i], polys_[pair.j], order_)))
                return false;
        }
        return true;
    }

    std::vector<detail::OrderedPoly> reduced_basis()
    {
        std::vector<detail::OrderedPoly> basis;
        for (std::size_t k = 0; k < polys_.size(); ++k)
            if (active_[k])
                basis.push_back(polys_[k]);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            std::vector<const detail::OrderedPoly*> others;
            for (std::size_t l = 0; l < basis.size(); ++l)
                if (l != k)
                    others.push_back(&basis[l]);
            basis[k].terms = reduce(basis[k].terms, others, order_, counter_);
            make_monic(basis[k]);
        }
        std::sort(basis.begin(), basis.end(), [&](const auto& a, const auto& b) {
            return order_.compare(a.terms.front().monomial, b.terms.front().monomial) < 0;
        });
        return basis;
    }

    std::uint64_t steps() const noexcept { return counter_.steps(); }

private:
    const Monomial& lead(std::size_t k) const { return polys_[k].terms.front().monomial; }

    // Gebauer-Moeller update of the pair list and the active set.
    void update(detail::OrderedPoly h)
    {
        std::size_t hi = polys_.size();
        polys_.push_back(std::move(h));
        active_.push_back(false);
        const Monomial& lh = lead(hi);

        std::vector<CriticalPair> candidates;
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g])
                candidates.push_back(CriticalPair{g, hi, lcm(lead(g), lh)});

        std::vector<CriticalPair> kept;
        for (std::size_t a = 0; a < candidates.size(); ++a) {
            const auto& p = candidates[a];
            bool keep = lh.coprime(lead(p.i));
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
                    if (candidates[b].lcm.divides(p.lcm))
                        keep = false;
                for (const auto& q : kept)
                    if (keep && q.lcm.divides(p.lcm))
                        keep = false;
            }
            if (keep)
                kept.push_back(p);
        }

        std::vector<CriticalPair> next;
        for (const auto& p : pairs_) {
            bool drop = lh.divides(p.lcm) && !(lcm(lead(p.i), lh) == p.lcm) && !(lcm(lh, lead(p.j)) == p.lcm);
            if (!drop)
                next.push_back(p);
        }
        for (const auto& p : kept)
            if (!lh.coprime(lead(p.i)))
                next.push_back(p);
        pairs_ = std::move(next);

        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g] && lh.divides(lead(g)))
                active_[g] = false;
        active_[hi] = true;
    }

    MonomialOrder order_;
    StepCounter counter_;
    std::vector<detail::OrderedPoly> polys_;
    std::vector<bool> active_;
    std::vector<CriticalPair> pairs_;
};

} // namespace

std::uint64_t default_step_budget() noexcept
{
    return g_default_budget.load();
}

void set_default_step_budget(std::uint64_t steps) noexcept
{
    g_default_budget.store(steps);
}

// ---------------------------------------------------------------- GroebnerBasis

std::vector<Monomial> GroebnerBasis::leading_monomials() const
{
    std::vector<Monomial> out;
    for (const auto& g : ordered_)
        out.push_back(g.terms.front().monomial);
    return out;
}

bool GroebnerBasis::is_unit() const noexcept
{
    return ordered_.size() == 1 && ordered_[0].terms.front().monomial.degree() == 0;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const
{
    require_same_frame(frame_, p.frame(), "normal_form");
    if (ordered_.empty() || p.is_zero())
        return p;
    if (is_unit())
        return Polynomial(frame_);
    std::vector<const detail::OrderedPoly*> reducers;
    for (const auto& g : ordered_)
        reducers.push_back(&g);
    StepCounter counter(default_step_budget());
    return Polynomial::from_terms(frame_, reduce(p.terms(), reducers, order_, counter));
}

GroebnerBasis buchberger(const Frame& frame, std::span<const Polynomial> gens, const MonomialOrder& order,
                         const GroebnerOptions& options)
{
    GroebnerBasis result;
    result.frame_ = frame;
    result.order_ = order;
    if (order.kind() == MonomialOrder::Kind::block && order.split() > frame.dimension())
        throw DomainError("block order split exceeds the number of variables");

    BuchbergerState state(order, options.step_budget);
    bool proper = true;
    for (const auto& g : gens) {
        require_same_frame(frame, g.frame(), "buchberger");
        if (g.is_zero())
            continue;
        if (!state.insert(make_ordered(g, order).terms)) {
            proper = false;
            break;
        }
    }
    if (proper)
        state.run();
    result.ordered_ = state.reduced_basis();
    for (const auto& g : result.ordered_)
        result.elements_.push_back(Polynomial::from_terms(frame, g.terms));
    result.steps_ = state.steps();
    return result;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis)
{
    return basis.normal_form(p);
}

// ---------------------------------------------------------------- Ideal

struct Ideal::Cache {
    std::mutex mutex;
    std::optional<GroebnerBasis> basis;
};

Ideal::Ideal(Frame frame, std::vector<Polynomial> generators)
    : frame_(std::move(frame)), cache_(std::make_shared<Cache>())
{
    for (auto& g : generators) {
        require_same_frame(frame_, g.frame(), "ideal generator");
        if (!g.is_zero())
            generators_.push_back(std::move(g));
    }
}

Ideal Ideal::unit(const Frame& frame)
{
    return Ideal(frame, {Polynomial::constant(frame, 1)});
}

const GroebnerBasis& Ideal::basis() const
{
    std::lock_guard lock(cache_->mutex);
    if (!cache_->basis) {
        GroebnerBasis gb = buchberger(frame_, generators_);
        for (const auto& g : generators_)
            if (!gb.contains(g))
                throw ConsistencyError("cached Groebner basis does not contain generator " + g.to_string());
        cache_->basis = std::move(gb);
    }
    return *cache_->basis;
}

bool Ideal::contains(const Polynomial& p) const
{
    return basis().contains(p);
}

Ideal Ideal::operator+(const Ideal& other) const
{
    require_same_frame(frame_, other.frame_, "ideal sum");
    auto gens = generators_;
    gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
    return Ideal(frame_, std::move(gens));
}

std::string Ideal::to_string() const
{
    if (generators_.empty())
        return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i)
            out += ", ";
        out += generators_[i].to_string();
    }
    return out + ")";
}

bool ideal_contains(const Ideal& I, const Ideal& J)
{
    require_same_frame(I.frame(), J.frame(), "ideal_contains");
    if (J.is_zero())
        return true;
    const auto& gb = I.basis();
    return std::all_of(J.generators().begin(), J.generators().end(),
                       [&](const Polynomial& g) { return gb.contains(g); });
}

bool ideal_equal(const Ideal& I, const Ideal& J)
{
    return ideal_contains(I, J) && ideal_contains(J, I);
}

bool radical_member(const Ideal& I, const Polynomial& p, const GroebnerOptions& options)
{
    require_same_frame(I.frame(), p.frame(), "radical_member");
    Frame extended = I.frame().extended(I.frame().fresh_name("_t"));
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators())
        gens.push_back(g.rebased(extended));
    Polynomial t = Polynomial::variable(extended, extended.dimension() - 1);
    gens.push_back(Polynomial::constant(extended, 1) - t * p.rebased(extended));
    return buchberger(extended, gens, MonomialOrder::grevlex(), options).is_unit();
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& keep, const GroebnerOptions& options)
{
    const Frame& frame = I.frame();
    std::vector<bool> kept(frame.dimension(), false);
    for (const auto& name : keep)
        kept[frame.index(name)] = true;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < frame.dimension(); ++i)
        if (!kept[i])
            names.push_back(frame.name(i));
    std::size_t split = names.size();
    for (std::size_t i = 0; i < frame.dimension(); ++i)
        if (kept[i])
            names.push_back(frame.name(i));
    Frame permuted(std::move(names));

    std::vector<Polynomial> gens;
    for (const auto& g : I.generators())
        gens.push_back(g.rebased(permuted));
    GroebnerBasis gb = buchberger(permuted, gens, MonomialOrder::block(split), options);

    std::vector<Polynomial> result;
    for (const auto& g : gb.elements()) {
        bool free = true;
        for (std::size_t v = 0; v < split && free; ++v)
            free = !g.depends_on(v);
        if (free)
            result.push_back(g.rebased(frame));
    }
    return Ideal(frame, std::move(result));
}

// ---------------------------------------------------------------- Hilbert series

namespace {

using UPoly = std::vector<Integer>;

void trim(UPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

UPoly upoly_mul(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UPoly one_minus_t_power(unsigned d)
{
    UPoly r(d + 1, 0);
    r[0] += 1;
    r[d] -= 1;
    trim(r);
    return r;
}

void minimalize(std::vector<Monomial>& gens)
{
    std::sort(gens.begin(), gens.end(),
              [](const Monomial& a, const Monomial& b) { return compare_grevlex(a, b) < 0; });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Monomial> out;
    for (const auto& g : gens)
        if (std::none_of(out.begin(), out.end(), [&](const Monomial& h) { return h.divides(g); }))
            out.push_back(g);
    gens = std::move(out);
}

// Numerator of the Hilbert series of k[x]/M for a monomial ideal M, by
// pivoting on a variable shared by two or more generators.
UPoly monomial_numerator(std::vector<Monomial> gens)
{
    minimalize(gens);
    if (gens.empty())
        return {1};
    if (gens.front().degree() == 0)
        return {};
    std::size_t n = gens.front().size();
    std::vector<unsigned> count(n, 0);
    for (const auto& g : gens)
        for (std::size_t v = 0; v < n; ++v)
            if (g[v])
                ++count[v];
    std::size_t pivot = 0;
    for (std::size_t v = 1; v < n; ++v)
        if (count[v] > count[pivot])
            pivot = v;
    if (count[pivot] < 2) {
        UPoly r{1};
        for (const auto& g : gens)
            r = upoly_mul(r, one_minus_t_power(g.degree()));
        return r;
    }
    unsigned e = 0;
    for (const auto& g : gens)
        if (g[pivot] && (e == 0 || g[pivot] < e))
            e = g[pivot];
    Monomial p(n);
    p.set(pivot, e);

    std::vector<Monomial> plus{p};
    for (const auto& g : gens)
        if (!p.divides(g))
            plus.push_back(g);
    std::vector<Monomial> colon;
    for (const auto& g : gens)
        colon.push_back(g / gcd(g, p));

    UPoly a = monomial_numerator(std::move(plus));
    UPoly b = monomial_numerator(std::move(colon));
    UPoly r(std::max(a.size(), b.size() + e), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i + e] += b[i];
    trim(r);
    return r;
}

} // namespace

HilbertData hilbert(const Ideal& I)
{
    for (const auto& g : I.generators())
        if (!grading(g).homogeneous)
            throw DomainError("hilbert: generator " + g.to_string() + " is not homogeneous");
    HilbertData data;
    std::size_t n = I.frame().dimension();
    data.numerator = monomial_numerator(I.basis().leading_monomials());
    if (data.numerator.empty()) {
        data.affine_dimension = -1;
        data.dimension = -1;
        data.degree = 0;
        return data;
    }
    UPoly q = data.numerator;
    std::size_t factors = 0;
    while (true) {
        Integer at_one = 0;
        for (const auto& c : q)
            at_one += c;
        if (at_one != 0) {
            data.degree = at_one;
            break;
        }
        // Divide by (1 - t): coefficients of q / (1 - t) are prefix sums.
        UPoly next(q.size() - 1, 0);
        Integer acc = 0;
        for (std::size_t i = 0; i + 1 < q.size(); ++i) {
            acc += q[i];
            next[i] = acc;
        }
        trim(next);
        q = std::move(next);
        ++factors;
    }
    data.affine_dimension = static_cast<int>(n) - static_cast<int>(factors);
    data.dimension = data.affine_dimension - 1;
    return data;
}

Ideal jacobian_ideal(const Polynomial& f)
{
    if (f.is_zero())
        throw DomainError("jacobian_ideal of the zero polynomial");
    std::vector<Polynomial> gens{f};
    for (std::size_t i = 0; i < f.frame().dimension(); ++i)
        gens.push_back(diff(f, i));
    return Ideal(f.frame(), std::move(gens));
}

std::string serialize(const Ideal& I, const MonomialOrder& order)
{
    std::string out = "frame ";
    const auto& names = I.frame().names();
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? ", " : "") + names[i];
    out += "\norder " + order.name() + "\n";
    for (const auto& g : I.generators())
        out += g.to_string() + "\n";
    return out;
}

} // namespace pdl
