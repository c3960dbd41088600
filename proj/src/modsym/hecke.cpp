#include "slopes/modsym/hecke.hpp"

#include "slopes/charpoly.hpp"
#include "slopes/linalg.hpp"
#include "slopes/trace/dimension.hpp"

#include <cmath>
#include <numeric>

namespace slopes::modsym {

namespace {

// Cusp classes of Gamma0(M) as orbits of P^1(Z/M) under (c:d) -> (c:d+c),
// with the star identification (c:d) ~ (-c:d). The cusp g(oo) of a matrix g
// with bottom row (c, d) is the class of (c:d).
std::vector<int> cusp_class_of_points(const P1List& p1, std::size_t& nclasses)
{
    const std::size_t n = p1.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto [c, d] = p1.point(i);
        unite(static_cast<int>(i), p1.index_of(c, d + c));
        unite(static_cast<int>(i), p1.index_of(-c, d));
    }
    std::vector<int> label(n, -1), out(n);
    nclasses = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int r = find(static_cast<int>(i));
        if (label[static_cast<std::size_t>(r)] < 0) label[static_cast<std::size_t>(r)] = static_cast<int>(nclasses++);
        out[i] = label[static_cast<std::size_t>(r)];
    }
    return out;
}

}  // namespace

CuspidalPlusSpace cuspidal_plus_subspace(std::shared_ptr<const ManinSymbolSpace> space)
{
    const ManinSymbolSpace& sp = *space;
    const int w = sp.weight() - 2;
    CuspidalPlusSpace out;
    out.parent_ = space;
    const auto cls = cusp_class_of_points(sp.p1(), out.cusp_classes_);

    // delta [X^i Y^(w-i), (c:d)] = [i = w] {g oo} - [i = 0] {g 0}, g0 having bottom row (d, -c).
    const std::size_t dim = sp.dimension();
    Matrix<Rational> bd(out.cusp_classes_, dim);
    out.boundary_.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const int gen = sp.free_representative(sp.basis()[j]);
        const int i = sp.generator_power(gen);
        const auto [c, d] = sp.p1().point(static_cast<std::size_t>(sp.generator_point(gen)));
        std::vector<int> vals(out.cusp_classes_, 0);
        if (i == w) vals[static_cast<std::size_t>(cls[static_cast<std::size_t>(sp.p1().index_of(c, d))])] += 1;
        if (i == 0) vals[static_cast<std::size_t>(cls[static_cast<std::size_t>(sp.p1().index_of(d, -c))])] -= 1;
        for (std::size_t q = 0; q < vals.size(); ++q) {
            if (vals[q] == 0) continue;
            bd(q, j) = vals[q];
            out.boundary_[j].emplace_back(static_cast<int>(q), vals[q]);
        }
    }

    Kernel ker = right_kernel(bd);
    out.basis_ = std::move(ker.basis);
    out.coordinate_columns_ = std::move(ker.free_columns);

    const auto expected = trace::dim_cuspforms(sp.weight(), sp.level());
    if (static_cast<std::int64_t>(out.dimension()) != expected)
        throw ConsistencyError("cuspidal_plus_subspace: dimension " + std::to_string(out.dimension()) +
                               " but dim S_" + std::to_string(sp.weight()) + "(Gamma0(" + std::to_string(sp.level()) +
                               ")) = " + std::to_string(expected));
    return out;
}

Matrix<Integer> hecke_on_quotient(const ManinSymbolSpace& sp, std::int64_t p)
{
    const std::size_t dim = sp.dimension();
    const std::size_t nfree = sp.num_free();
    const int w = sp.weight() - 2;
    const P1List& p1 = sp.p1();
    const std::int64_t level = sp.level();

    // Free-symbol coordinates of T(basis_j), accumulated over the Heilbronn family.
    Matrix<Integer> acc(dim, nfree);
    std::vector<std::pair<int, int>> reps(dim);  // (power, point)
    for (std::size_t j = 0; j < dim; ++j) {
        const int gen = sp.free_representative(sp.basis()[j]);
        reps[j] = {sp.generator_power(gen), sp.generator_point(gen)};
    }

    for (const Mat2& h : heilbronn_cremona(p)) {
        const MonomialAction action(h, w);
        for (std::size_t j = 0; j < dim; ++j) {
            const auto [i, pt] = reps[j];
            const auto [c, d] = p1.point(static_cast<std::size_t>(pt));
            const std::int64_t u = (c * (h.a % level) + d * (h.c % level)) % level;
            const std::int64_t v = (c * (h.b % level) + d * (h.d % level)) % level;
            const int target = p1.index_of(u, v);
            if (target < 0) continue;
            const auto img = action.image(i);
            Integer* row = acc.row(j);
            for (int s = 0; s <= w; ++s) {
                const Integer& coeff = img[static_cast<std::size_t>(s)];
                if (coeff == 0) continue;
                const int gen = sp.generator_index(s, target);
                const int f = sp.free_of(gen);
                if (f < 0) continue;
                if (sp.sign_of(gen) > 0)
                    row[f] += coeff;
                else
                    row[f] -= coeff;
            }
        }
    }

    // Express in the quotient basis, scaled by the presentation denominator.
    Matrix<Integer> out(dim, dim);
    const Integer& den = sp.denominator();
    for (std::size_t j = 0; j < dim; ++j) {
        Integer* dst = out.row(j);
        const Integer* src = acc.row(j);
        for (std::size_t f = 0; f < nfree; ++f) {
            if (src[f] == 0) continue;
            const int bi = sp.basis_index_of_free(static_cast<int>(f));
            if (bi >= 0) {
                mpz_addmul(dst[bi].get_mpz_t(), src[f].get_mpz_t(), den.get_mpz_t());
                continue;
            }
            for (const auto& [col, v] : sp.pivot_expression(static_cast<int>(f)))
                mpz_addmul(dst[col].get_mpz_t(), src[f].get_mpz_t(), v.get_mpz_t());
        }
    }
    return out;
}

HeckeMatrix hecke_matrix(const CuspidalPlusSpace& space, std::int64_t n)
{
    if (!is_prime(n)) throw std::invalid_argument("hecke_matrix: only prime indices are supported, got " + std::to_string(n));
    const ManinSymbolSpace& sp = space.parent();
    HeckeMatrix hm;
    hm.index = n;
    hm.label = sp.level() % n == 0 ? 'U' : 'T';
    const std::size_t d = space.dimension();
    hm.matrix = Matrix<Rational>(d, d);
    if (d == 0) return hm;

    const Matrix<Integer> t = hecke_on_quotient(sp, n);
    const Matrix<Rational>& kb = space.basis();
    const auto& cols = space.coordinate_columns();
    const std::size_t dim = sp.dimension();
    const Rational inv_den(Integer(1), sp.denominator());

    std::vector<Rational> image(dim);
    Rational tmp;
    for (std::size_t r = 0; r < d; ++r) {
        std::fill(image.begin(), image.end(), Rational(0));
        for (std::size_t j = 0; j < dim; ++j) {
            const Rational& kj = kb(r, j);
            if (kj == 0) continue;
            const Integer* trow = t.row(j);
            for (std::size_t c = 0; c < dim; ++c) {
                if (trow[c] == 0) continue;
                tmp = kj * trow[c];
                image[c] += tmp;
            }
        }
        // The image must stay cuspidal.
        std::vector<Rational> bnd(space.cusp_classes());
        for (std::size_t c = 0; c < dim; ++c) {
            if (image[c] == 0) continue;
            for (const auto& [q, v] : space.boundary(c)) bnd[static_cast<std::size_t>(q)] += image[c] * v;
        }
        for (const auto& b : bnd)
            if (b != 0) throw ConsistencyError("hecke_matrix: " + hm.name() + " does not preserve the cuspidal subspace");
        for (std::size_t s = 0; s < d; ++s) hm.matrix(r, s) = image[cols[s]] * inv_den;
    }
    return hm;
}

double hecke_eigenvalue_bound_log2(int k, std::int64_t p)
{
    return 1.0 + 0.5 * (k - 1) * std::log2(static_cast<double>(p));
}

std::vector<IntPolynomial> charpolys_cuspidal(int k, std::int64_t level, const std::vector<std::int64_t>& primes)
{
    for (auto p : primes)
        if (!is_prime(p)) throw std::invalid_argument("charpoly_cuspidal: " + std::to_string(p) + " is not prime");
    std::vector<IntPolynomial> out;
    if (trace::dim_cuspforms(k, level) == 0 && k % 2 == 0 && k >= 2) {
        out.assign(primes.size(), IntPolynomial::one());
        return out;
    }
    auto space = std::make_shared<const ManinSymbolSpace>(build_space(k, level));
    const CuspidalPlusSpace cusp = cuspidal_plus_subspace(space);
    for (auto p : primes) {
        const HeckeMatrix hm = hecke_matrix(cusp, p);
        CharpolyOptions opt;
        opt.eigenvalue_bound_log2 = hecke_eigenvalue_bound_log2(k, p);
        out.push_back(inverse_charpoly(hm.matrix, opt));
    }
    return out;
}

IntPolynomial charpoly_cuspidal(int k, std::int64_t level, std::int64_t p)
{
    return charpolys_cuspidal(k, level, {p}).front();
}

}  // namespace slopes::modsym
