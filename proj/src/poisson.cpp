#include "pdl/poisson.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace pdl {

struct PoissonStructure::Cache {
    std::mutex mutex;
    std::map<unsigned, PolyVector> powers;
};

PoissonStructure::PoissonStructure(PolyVector sigma) : sigma_(std::move(sigma)), cache_(std::make_shared<Cache>())
{
    if (sigma_.degree() != 2 && !sigma_.is_zero())
        throw DomainError("a Poisson structure is a bivector, got degree " + std::to_string(sigma_.degree()));
    if (sigma_.is_zero())
        sigma_ = PolyVector(sigma_.frame(), 2);
    PolyVector jacobiator = schouten(sigma_, sigma_);
    if (!jacobiator.is_zero())
        throw DomainError("[sigma, sigma] = " + jacobiator.to_string() + " is not zero");
}

const PolyVector& PoissonStructure::power(unsigned k) const
{
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->powers.find(k);
    if (it != cache_->powers.end())
        return it->second;
    PolyVector value = PolyVector::scalar(Polynomial::constant(frame(), 1));
    unsigned start = 0;
    // Extend the largest cached power below k.
    for (auto jt = cache_->powers.begin(); jt != cache_->powers.end() && jt->first < k; ++jt) {
        value = jt->second;
        start = jt->first;
    }
    for (unsigned j = start; j < k; ++j)
        value = wedge(value, sigma_);
    return cache_->powers.emplace(k, std::move(value)).first->second;
}

unsigned PoissonStructure::generic_rank() const
{
    unsigned r = 0;
    while (2 * (r + 1) <= frame().dimension() && !power(r + 1).is_zero())
        ++r;
    return 2 * r;
}

Polynomial PoissonStructure::entry(std::size_t i, std::size_t j) const
{
    if (i == j)
        return Polynomial(frame());
    if (i < j)
        return sigma_.component(index_set({i, j}));
    return -sigma_.component(index_set({j, i}));
}

JacobiResult jacobi_check(const PolyVector& sigma)
{
    JacobiResult result;
    result.witness = schouten(sigma, sigma);
    if (result.witness.is_zero())
        result.structure.emplace(sigma);
    return result;
}

Polynomial bracket(const PoissonStructure& P, const Polynomial& f, const Polynomial& g)
{
    return pairing(P.sigma(), wedge(differential(f), differential(g)));
}

PolyVector anchor(const PoissonStructure& P, const DiffForm& alpha)
{
    if (alpha.degree() != 1 && !alpha.is_zero())
        throw DomainError("the anchor takes a one-form");
    if (alpha.is_zero())
        return PolyVector(P.frame(), 1);
    return contract(alpha, P.sigma());
}

PolyVector hamiltonian_field(const PoissonStructure& P, const Polynomial& f)
{
    return anchor(P, differential(f));
}

PolyMatrix coefficient_matrix(const PoissonStructure& P)
{
    std::size_t n = P.frame().dimension();
    PolyMatrix M(n, std::vector<Polynomial>(n, Polynomial(P.frame())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = P.entry(i, j);
    return M;
}

namespace {

void require_skew(const PolyMatrix& M)
{
    std::size_t n = M.size();
    for (const auto& row : M)
        if (row.size() != n)
            throw DomainError("Pfaffian of a non-square matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (!M[i][i].is_zero())
            throw DomainError("Pfaffian of a matrix with nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(M[i][j] + M[j][i]).is_zero())
                throw DomainError("Pfaffian of a matrix that is not skew-symmetric");
    }
    if (n > kMaxVariables)
        throw DomainError("matrix too large");
}

class PfaffianMemo {
public:
    explicit PfaffianMemo(const PolyMatrix& M, const Frame& frame) : M_(M), frame_(frame) {}

    const Polynomial& operator()(IndexSet rows)
    {
        auto it = memo_.find(rows);
        if (it != memo_.end())
            return it->second;
        Polynomial value(frame_);
        if (rows == 0) {
            value = Polynomial::constant(frame_, 1);
        } else if (index_count(rows) % 2 == 0) {
            auto idx = indices(rows);
            std::size_t a = idx[0];
            for (std::size_t j = 1; j < idx.size(); ++j) {
                const Polynomial& m = M_[a][idx[j]];
                if (m.is_zero())
                    continue;
                IndexSet rest = rows & ~(IndexSet{1} << a) & ~(IndexSet{1} << idx[j]);
                Polynomial term = m * (*this)(rest);
                // 1-indexed position j+1: even positions are positive.
                if (j % 2 == 1)
                    value += term;
                else
                    value -= term;
            }
        }
        return memo_.emplace(rows, std::move(value)).first->second;
    }

private:
    const PolyMatrix& M_;
    Frame frame_;
    std::unordered_map<IndexSet, Polynomial> memo_;
};

Frame matrix_frame(const PolyMatrix& M)
{
    for (const auto& row : M)
        for (const auto& p : row)
            return p.frame();
    return Frame();
}

} // namespace

Polynomial pfaffian(const PolyMatrix& M)
{
    require_skew(M);
    if (M.size() % 2 != 0)
        throw DomainError("Pfaffian of an odd-size matrix");
    Frame frame = matrix_frame(M);
    if (M.empty())
        return Polynomial::constant(frame, 1);
    PfaffianMemo memo(M, frame);
    IndexSet all = M.size() == 32 ? ~IndexSet{0} : ((IndexSet{1} << M.size()) - 1);
    return memo(all);
}

std::vector<std::pair<IndexSet, Polynomial>> sub_pfaffians(const PolyMatrix& M, unsigned size)
{
    require_skew(M);
    if (size % 2 != 0)
        throw DomainError("sub-Pfaffians have even size");
    PfaffianMemo memo(M, matrix_frame(M));
    std::vector<std::pair<IndexSet, Polynomial>> out;
    for (IndexSet rows : subsets_of_size(M.size(), size))
        out.emplace_back(rows, memo(rows));
    return out;
}

namespace {

std::vector<Polynomial> component_list(const PolyVector& V)
{
    std::vector<Polynomial> out;
    for (const auto& [set, c] : V.components())
        out.push_back(c);
    return out;
}

} // namespace

DegeneracyIdeal degeneracy_ideal(const PoissonStructure& P, unsigned k)
{
    const Frame& frame = P.frame();
    DegeneracyIdeal out{k, Ideal(frame), Ideal(frame), false};
    if (2 * k + 2 > frame.dimension()) {
        out.certified = true;
        return out;
    }
    out.ideal = Ideal(frame, component_list(P.power(k + 1)));
    std::vector<Polynomial> pf;
    for (auto& [rows, p] : sub_pfaffians(coefficient_matrix(P), 2 * k + 2))
        pf.push_back(std::move(p));
    out.pfaffian_ideal = Ideal(frame, std::move(pf));
    out.certified = ideal_equal(out.ideal, out.pfaffian_ideal);
    if (!out.certified)
        throw ConsistencyError("sigma^" + std::to_string(k + 1) + " components and the " + std::to_string(2 * k + 2) +
                               "-Pfaffians generate different ideals");
    return out;
}

DegeneracyTower degeneracy_tower(const PoissonStructure& P)
{
    DegeneracyTower tower;
    tower.generic_rank = P.generic_rank();
    for (unsigned k = 0; 2 * k < tower.generic_rank; ++k)
        tower.levels.push_back(degeneracy_ideal(P, k));
    tower.chain_verified = true;
    for (std::size_t k = 1; k < tower.levels.size(); ++k)
        if (!ideal_contains(tower.levels[k - 1].ideal, tower.levels[k].ideal))
            tower.chain_verified = false;
    if (!tower.chain_verified)
        throw ConsistencyError("degeneracy ideals do not form a descending chain");
    return tower;
}

SubschemeReport subscheme_check(const PoissonStructure& P, const Ideal& I)
{
    require_same_frame(P.frame(), I.frame(), "subscheme check");
    SubschemeReport report{I, true, std::nullopt, {}, {}, {}};
    const auto& gb = I.basis();
    for (const auto& g : I.generators())
        for (std::size_t j = 0; j < P.frame().dimension(); ++j) {
            Polynomial value = bracket(P, g, Polynomial::variable(P.frame(), j));
            Polynomial rem = gb.normal_form(value);
            if (!rem.is_zero()) {
                report.is_poisson = false;
                report.witnesses.push_back({g, "{g, " + P.frame().name(j) + "}", rem});
            }
        }
    return report;
}

SubschemeReport strong_subscheme_check(const PoissonStructure& P, const Ideal& I,
                                       const std::vector<PolyVector>& fields, const std::string& field_set)
{
    for (const auto& Z : fields) {
        require_same_frame(P.frame(), Z.frame(), "strong subscheme check");
        if (Z.degree() != 1 && !Z.is_zero())
            throw DomainError("supplied field " + Z.to_string() + " is not a vector field");
        if (!Z.is_zero() && !lie_derivative(Z, P.sigma()).is_zero())
            throw DomainError("supplied field " + Z.to_string() + " is not a Poisson vector field");
    }
    SubschemeReport report = subscheme_check(P, I);
    report.fields = fields;
    report.field_set = field_set;
    bool strong = report.is_poisson;
    const auto& gb = I.basis();
    for (const auto& Z : fields) {
        if (Z.is_zero())
            continue;
        for (const auto& g : I.generators()) {
            Polynomial rem = gb.normal_form(apply(Z, g));
            if (!rem.is_zero()) {
                strong = false;
                report.witnesses.push_back({g, "(" + Z.to_string() + ")(g)", rem});
            }
        }
    }
    report.is_strong = strong;
    return report;
}

// ---------------------------------------------------------------- Poisson fields

namespace {

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned D)
{
    std::vector<Monomial> out;
    Monomial m(n);
    // Depth-first enumeration of exponent vectors with total degree <= D.
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
        if (var == n) {
            out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m.set(var, e);
            self(self, var + 1, left - e);
        }
        m.set(var, 0);
    };
    rec(rec, 0, D);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare_grevlex(a, b) < 0; });
    return out;
}

// Kernel of an integer matrix (rows = equations) by fraction-free elimination.
std::vector<std::vector<Integer>> integer_kernel(std::vector<std::vector<Integer>> rows, std::size_t ncols)
{
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Integer a = rows[r][c], b = rows[i][c];
            Integer content = 0;
            for (std::size_t j = 0; j < ncols; ++j) {
                rows[i][j] = a * rows[i][j] - b * rows[r][j];
                content = gcd(content, rows[i][j]);
            }
            if (content > 1)
                for (auto& x : rows[i])
                    x /= content;
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivot_cols)
        is_pivot[c] = true;
    std::vector<std::vector<Integer>> kernel;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(ncols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            Rational q(rows[i][f], rows[i][pivot_cols[i]]);
            q.canonicalize();
            v[pivot_cols[i]] = -q;
        }
        Integer den = 1;
        for (const auto& x : v)
            den = lcm(den, Integer(x.get_den()));
        std::vector<Integer> w(ncols);
        Integer content = 0;
        for (std::size_t j = 0; j < ncols; ++j) {
            Rational scaled = v[j] * den;
            w[j] = scaled.get_num();
            content = gcd(content, w[j]);
        }
        if (content > 1)
            for (auto& x : w)
                x /= content;
        kernel.push_back(std::move(w));
    }
    return kernel;
}

} // namespace

std::vector<PolyVector> poisson_fields_up_to_degree(const PoissonStructure& P, unsigned D)
{
    const Frame& frame = P.frame();
    std::size_t n = frame.dimension();
    auto monos = monomials_up_to(n, D);
    std::size_t ncols = n * monos.size();

    // Column (i, m) holds the coefficients of [x^m d/dx_i, sigma].
    std::map<std::pair<IndexSet, std::vector<unsigned>>, std::vector<Rational>> equations;
    auto key_of = [n](IndexSet set, const Monomial& m) {
        std::vector<unsigned> e(n);
        for (std::size_t v = 0; v < n; ++v)
            e[v] = m[v];
        return std::make_pair(set, std::move(e));
    };
    std::vector<PolyVector> candidates;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& m : monos)
            candidates.push_back(PolyVector::basis(frame, {i}, Polynomial::monomial(frame, m)));
    for (std::size_t col = 0; col < ncols; ++col) {
        PolyVector image = schouten(candidates[col], P.sigma());
        for (const auto& [set, c] : image.components())
            for (const auto& t : c.terms()) {
                auto& row = equations[key_of(set, t.monomial)];
                if (row.empty())
                    row.assign(ncols, 0);
                row[col] = t.coeff;
            }
    }
    std::vector<std::vector<Integer>> rows;
    for (auto& [key, row] : equations) {
        Integer den = 1;
        for (const auto& x : row)
            den = lcm(den, Integer(x.get_den()));
        std::vector<Integer> irow(ncols);
        for (std::size_t j = 0; j < ncols; ++j) {
            Rational scaled = row[j] * den;
            irow[j] = scaled.get_num();
        }
        rows.push_back(std::move(irow));
    }
    std::vector<PolyVector> basis;
    for (const auto& v : integer_kernel(std::move(rows), ncols)) {
        PolyVector Z(frame, 1);
        for (std::size_t col = 0; col < ncols; ++col)
            if (v[col] != 0)
                Z += Rational(v[col]) * candidates[col];
        if (!lie_derivative(Z, P.sigma()).is_zero())
            throw ConsistencyError("kernel vector " + Z.to_string() + " is not a Poisson field");
        basis.push_back(std::move(Z));
    }
    return basis;
}

// ---------------------------------------------------------------- Lie algebras

StructureConstants::StructureConstants(std::size_t dimension) : n_(dimension), c_(dimension * dimension * dimension, 0)
{
}

void StructureConstants::set(std::size_t i, std::size_t j, std::size_t k, const Rational& value)
{
    if (i >= n_ || j >= n_ || k >= n_)
        throw DomainError("structure constant index out of range");
    if (i == j && sgn(value) != 0)
        throw DomainError("[e_i, e_i] must vanish");
    c_[(i * n_ + j) * n_ + k] = value;
    c_[(j * n_ + i) * n_ + k] = -value;
}

void StructureConstants::validate() const
{
    const auto& c = *this;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                if (c(i, j, k) != -c(j, i, k))
                    throw DomainError("structure constants are not antisymmetric");
            }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            for (std::size_t l = j + 1; l < n_; ++l)
                for (std::size_t p = 0; p < n_; ++p) {
                    Rational total = 0;
                    for (std::size_t m = 0; m < n_; ++m)
                        total += c(i, j, m) * c(m, l, p) + c(j, l, m) * c(m, i, p) + c(l, i, m) * c(m, j, p);
                    if (sgn(total) != 0)
                        throw DomainError("structure constants violate the Jacobi identity at (" + std::to_string(i) +
                                          ", " + std::to_string(j) + ", " + std::to_string(l) + ")");
                }
}

PoissonStructure kks_from_structure_constants(const StructureConstants& C, const Frame& frame)
{
    C.validate();
    std::size_t n = C.dimension();
    if (frame.dimension() != n)
        throw DomainError("frame dimension does not match the Lie algebra");
    PolyVector sigma(frame, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial coeff(frame);
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(C(i, j, k)) != 0)
                    coeff += C(i, j, k) * Polynomial::variable(frame, k);
            sigma.add(index_set({i, j}), coeff);
        }
    return PoissonStructure(std::move(sigma));
}

StructureConstants sl2_constants()
{
    StructureConstants C(3);
    C.set(0, 1, 1, 2);  // [h, e] = 2e
    C.set(0, 2, 2, -2); // [h, f] = -2f
    C.set(1, 2, 0, 1);  // [e, f] = h
    return C;
}

Frame sl2_frame()
{
    return Frame{"h", "e", "f"};
}

namespace {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

std::vector<Mat3> sl3_basis()
{
    std::vector<Mat3> basis;
    const std::pair<int, int> offdiag[] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
    for (auto [i, j] : offdiag) {
        Mat3 m{};
        m[i][j] = 1;
        basis.push_back(m);
    }
    Mat3 h1{}, h2{};
    h1[0][0] = 1;
    h1[1][1] = -1;
    h2[1][1] = 1;
    h2[2][2] = -1;
    basis.push_back(h1);
    basis.push_back(h2);
    return basis;
}

Mat3 commutator(const Mat3& a, const Mat3& b)
{
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational s = 0;
            for (int k = 0; k < 3; ++k)
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            out[i][j] = s;
        }
    return out;
}

// Coordinates of a traceless matrix in the sl3 basis.
std::vector<Rational> sl3_coordinates(const Mat3& m)
{
    std::vector<Rational> out{m[0][1], m[0][2], m[1][0], m[1][2], m[2][0], m[2][1]};
    // diag(a, b, c) = a h1 + (a + b) h2
    out.push_back(m[0][0]);
    out.push_back(m[0][0] + m[1][1]);
    return out;
}

} // namespace

StructureConstants sl3_constants()
{
    auto basis = sl3_basis();
    StructureConstants C(8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j) {
            auto coords = sl3_coordinates(commutator(basis[i], basis[j]));
            for (std::size_t k = 0; k < 8; ++k)
                if (sgn(coords[k]) != 0)
                    C.set(i, j, k, coords[k]);
        }
    return C;
}

Frame sl3_frame()
{
    return Frame{"e12", "e13", "e21", "e23", "e31", "e32", "h1", "h2"};
}

} // namespace pdl
