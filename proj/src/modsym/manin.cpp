#include "slopes/modsym/manin.hpp"

#include <algorithm>
#include <string>

namespace slopes::modsym {

namespace {

// Union-find where each element is +-1 times its root; a root forced to equal
// its own negative is zero.
class SignedUnionFind {
public:
    explicit SignedUnionFind(std::size_t n) : parent_(n), sign_(n, 1), zero_(n, 0)
    {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
    }

    std::pair<int, int> find(int x)
    {
        int s = 1;
        int r = x;
        while (parent_[static_cast<std::size_t>(r)] != r) {
            s *= sign_[static_cast<std::size_t>(r)];
            r = parent_[static_cast<std::size_t>(r)];
        }
        // Path compression.
        int cur = x;
        int cur_sign = s;
        while (parent_[static_cast<std::size_t>(cur)] != cur) {
            const int next = parent_[static_cast<std::size_t>(cur)];
            const int next_sign = cur_sign * sign_[static_cast<std::size_t>(cur)];
            parent_[static_cast<std::size_t>(cur)] = r;
            sign_[static_cast<std::size_t>(cur)] = static_cast<signed char>(cur_sign);
            cur = next;
            cur_sign = next_sign;
        }
        return {r, s};
    }

    // Impose x = s * y.
    void unite(int x, int y, int s)
    {
        auto [rx, sx] = find(x);
        auto [ry, sy] = find(y);
        const int t = sx * s * sy;  // rx = t * ry
        if (rx == ry) {
            if (t == -1) zero_[static_cast<std::size_t>(rx)] = 1;
            return;
        }
        if (rx > ry) std::swap(rx, ry);
        parent_[static_cast<std::size_t>(ry)] = rx;
        sign_[static_cast<std::size_t>(ry)] = static_cast<signed char>(t);
        zero_[static_cast<std::size_t>(rx)] |= zero_[static_cast<std::size_t>(ry)];
    }

    bool is_zero_root(int r) const { return zero_[static_cast<std::size_t>(r)] != 0; }

private:
    std::vector<int> parent_;
    std::vector<signed char> sign_;
    std::vector<char> zero_;
};

}  // namespace

ManinSymbolSpace build_space(int k, std::int64_t level)
{
    if (k < 2 || k % 2) throw std::invalid_argument("build_space: weight must be even and >= 2, got " + std::to_string(k));
    if (level < 1) throw std::invalid_argument("build_space: level must be positive");

    ManinSymbolSpace sp(k, level);
    const int w = k - 2;
    const int npts = static_cast<int>(sp.p1_.size());
    const std::size_t ngens = static_cast<std::size_t>(npts) * static_cast<std::size_t>(k - 1);

    SignedUnionFind uf(ngens);
    for (int pt = 0; pt < npts; ++pt) {
        const auto [c, d] = sp.p1_.point(static_cast<std::size_t>(pt));
        const int sigma_pt = sp.p1_.index_of(d, -c);
        const int star_pt = sp.p1_.index_of(-c, d);
        for (int i = 0; i <= w; ++i) {
            const int g = sp.generator_index(i, pt);
            const int parity = (i % 2) ? -1 : 1;
            // x|sigma = (-1)^i [X^(w-i) Y^i, (d, -c)]
            uf.unite(g, sp.generator_index(w - i, sigma_pt), -parity);
            // x|star = (-1)^i [X^i Y^(w-i), (-c, d)]
            uf.unite(g, sp.generator_index(i, star_pt), parity);
        }
    }

    sp.free_of_gen_.assign(ngens, -1);
    sp.sign_of_gen_.assign(ngens, 0);
    std::vector<int> free_of_root(ngens, -1);
    for (std::size_t g = 0; g < ngens; ++g) {
        auto [r, s] = uf.find(static_cast<int>(g));
        if (uf.is_zero_root(r)) continue;
        int& f = free_of_root[static_cast<std::size_t>(r)];
        if (f < 0) {
            f = static_cast<int>(sp.free_rep_.size());
            sp.free_rep_.push_back(r);
        }
        sp.free_of_gen_[g] = f;
        sp.sign_of_gen_[g] = static_cast<signed char>(s);
    }

    const int nfree = static_cast<int>(sp.free_rep_.size());
    SparseEchelon ech(nfree);
    const MonomialAction tau(kTau, w);
    const MonomialAction tau2(kTauSquared, w);
    std::vector<Integer> acc(static_cast<std::size_t>(nfree));
    std::vector<int> touched;
    std::vector<char> seen(static_cast<std::size_t>(npts), 0);

    auto accumulate = [&](int gen, const Integer& coeff) {
        const int f = sp.free_of(gen);
        if (f < 0 || coeff == 0) return;
        auto& slot = acc[static_cast<std::size_t>(f)];
        if (slot == 0) touched.push_back(f);
        if (sp.sign_of(gen) > 0)
            slot += coeff;
        else
            slot -= coeff;
    };

    const Integer one(1);
    for (int pt = 0; pt < npts; ++pt) {
        if (seen[static_cast<std::size_t>(pt)]) continue;
        const auto [c, d] = sp.p1_.point(static_cast<std::size_t>(pt));
        const int pt1 = sp.p1_.index_of(d, -c - d);
        const int pt2 = sp.p1_.index_of(-c - d, c);
        seen[static_cast<std::size_t>(pt)] = seen[static_cast<std::size_t>(pt1)] = seen[static_cast<std::size_t>(pt2)] = 1;
        for (int i = 0; i <= w; ++i) {
            touched.clear();
            accumulate(sp.generator_index(i, pt), one);
            const auto img1 = tau.image(i);
            const auto img2 = tau2.image(i);
            for (int j = 0; j <= w; ++j) {
                accumulate(sp.generator_index(j, pt1), img1[static_cast<std::size_t>(j)]);
                accumulate(sp.generator_index(j, pt2), img2[static_cast<std::size_t>(j)]);
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            SparseRow row;
            for (int f : touched) {
                auto& slot = acc[static_cast<std::size_t>(f)];
                if (slot != 0) row.emplace_back(f, Rational(slot));
                slot = 0;
            }
            if (!row.empty()) {
                ech.add_row(row);
                ++sp.relation_rows_;
            }
        }
    }
    ech.finalize();

    sp.basis_index_.assign(static_cast<std::size_t>(nfree), -1);
    for (int f = 0; f < nfree; ++f) {
        if (ech.is_pivot(f)) continue;
        sp.basis_index_[static_cast<std::size_t>(f)] = static_cast<int>(sp.basis_.size());
        sp.basis_.push_back(f);
    }

    sp.denominator_ = 1;
    for (int f = 0; f < nfree; ++f) {
        if (!ech.is_pivot(f)) continue;
        for (const auto& [col, v] : ech.pivot_row(f))
            mpz_lcm(sp.denominator_.get_mpz_t(), sp.denominator_.get_mpz_t(), v.get_den_mpz_t());
    }
    sp.pivot_expr_.assign(static_cast<std::size_t>(nfree), {});
    for (int f = 0; f < nfree; ++f) {
        if (!ech.is_pivot(f)) continue;
        auto& expr = sp.pivot_expr_[static_cast<std::size_t>(f)];
        for (const auto& [col, v] : ech.pivot_row(f)) {
            if (col == f) continue;
            const int j = sp.basis_index_[static_cast<std::size_t>(col)];
            if (j < 0) throw ConsistencyError("build_space: echelon row not reduced");
            Integer scaled = -v.get_num() * (sp.denominator_ / v.get_den());
            expr.emplace_back(j, std::move(scaled));
        }
    }
    return sp;
}

std::vector<Rational> ManinSymbolSpace::generator_coordinates(int gen) const
{
    std::vector<Rational> out(dimension());
    const int f = free_of(gen);
    if (f < 0) return out;
    const int s = sign_of(gen);
    const int j = basis_index_of_free(f);
    if (j >= 0) {
        out[static_cast<std::size_t>(j)] = s;
        return out;
    }
    for (const auto& [col, v] : pivot_expression(f)) {
        Rational q(v, denominator_);
        q.canonicalize();
        out[static_cast<std::size_t>(col)] = s > 0 ? q : Rational(-q);
    }
    return out;
}

}  // namespace slopes::modsym
