#include "slopes/trace/trace_formula.hpp"

#include "slopes/trace/classnumber.hpp"
#include "slopes/trace/dimension.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace slopes::trace {

namespace {

std::int64_t isqrt(std::int64_t n)
{
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// (rho^m - rhobar^m) / (rho - rhobar) for the roots of x^2 - t x + n.
Integer lucas_u(std::int64_t t, std::int64_t n, int m)
{
    if (m == 0) return 0;
    Integer prev = 0, cur = 1;
    const Integer tt(static_cast<long>(t)), nn(static_cast<long>(n));
    for (int i = 1; i < m; ++i) {
        Integer next = tt * cur - nn * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// psi(N)/psi(N/N_f) * #{x mod N : x^2 - t x + n = 0 mod N N_f}, N_f = gcd(N, f).
Rational local_weight(std::int64_t level, std::int64_t t, std::int64_t f, std::int64_t n)
{
    const std::int64_t nf = gcd(level, f);
    const std::int64_t modulus = level * nf;
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < level; ++x)
        if (mod(mod(x * x, modulus) - mod(t * x, modulus) + mod(n, modulus), modulus) == 0) ++count;
    Rational w(psi(level) * count, psi(level / nf));
    w.canonicalize();
    return w;
}

void check_arguments(int k, std::int64_t level, std::int64_t n)
{
    if (k < 2 || k % 2) throw std::invalid_argument("trace_Tn: weight must be even and >= 2");
    if (level < 1 || n < 1) throw std::invalid_argument("trace_Tn: level and index must be positive");
    if (gcd(n, level) != 1)
        throw std::invalid_argument("trace_Tn: gcd(" + std::to_string(n) + ", " + std::to_string(level) + ") != 1");
}

}  // namespace

Rational trace_Tn_with_h0(int k, std::int64_t level, std::int64_t n, const Rational& h0)
{
    check_arguments(k, level, n);
    const std::int64_t psi_n = psi(level);
    ClassNumberTable::global().reserve(4 * n);

    Rational elliptic = 0;
    const std::int64_t tmax = isqrt(4 * n);
    for (std::int64_t t = -tmax; t <= tmax; ++t) {
        const std::int64_t disc = t * t - 4 * n;
        const Integer u = lucas_u(t, n, k - 1);
        if (u == 0) continue;
        if (disc == 0) {
            elliptic += Rational(u) * h0 * psi_n;
            continue;
        }
        Rational inner = 0;
        for (std::int64_t f = 1; f * f <= -disc; ++f) {
            if (disc % (f * f) != 0) continue;
            const std::int64_t d = disc / (f * f);
            if (mod(d, 4) != 0 && mod(d, 4) != 1) continue;
            inner += weighted_class_number(d) * local_weight(level, t, f, n);
        }
        elliptic += Rational(u) * inner;
    }

    Rational hyperbolic = 0;
    for (std::int64_t d : divisors(n)) {
        const std::int64_t e = n / d;
        Integer m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(std::min(d, e)), static_cast<unsigned long>(k - 1));
        std::int64_t inner = 0;
        for (std::int64_t tau : divisors(level)) {
            const std::int64_t g = gcd(tau, level / tau);
            if ((d - e) % g == 0) inner += euler_phi(g);
        }
        hyperbolic += Rational(m * inner);
    }

    Rational total = -(elliptic + hyperbolic) / 2;
    if (k == 2)
        for (std::int64_t d : divisors(n)) total += d;
    return total;
}

Rational trace_Tn(int k, std::int64_t level, std::int64_t n)
{
    return trace_Tn_with_h0(k, level, n, ClassNumberTable::h0());
}

Rational calibrate_h0(const std::vector<std::pair<int, std::int64_t>>& grid)
{
    if (grid.empty()) throw std::invalid_argument("calibrate_h0: empty grid");
    std::optional<Rational> value;
    for (const auto& [k, level] : grid) {
        // tr T_1 is affine in H(0) with slope -(k-1) psi(N).
        const Rational a = trace_Tn_with_h0(k, level, 1, 0);
        const Rational b = trace_Tn_with_h0(k, level, 1, 1) - a;
        const Rational h = (Rational(dim_cuspforms(k, level)) - a) / b;
        if (value && *value != h)
            throw std::logic_error("calibrate_h0: inconsistent value at k=" + std::to_string(k) +
                                   ", N=" + std::to_string(level));
        value = h;
    }
    return *value;
}

namespace {

constexpr std::int64_t kHeckePowersLimit = std::int64_t{1} << 18;

class TraceMemo {
public:
    TraceMemo(int k, std::int64_t level) : k_(k), level_(level) {}
    const Rational& operator()(std::int64_t n)
    {
        auto it = memo_.find(n);
        if (it == memo_.end()) it = memo_.emplace(n, trace_Tn(k_, level_, n)).first;
        return it->second;
    }

private:
    int k_;
    std::int64_t level_;
    std::map<std::int64_t, Rational> memo_;
};

using Element = std::map<std::int64_t, Rational>;  // sum c_n T_n

Integer power_int(std::int64_t b, int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
    return r;
}

// T_a T_b = sum_{d | gcd(a, b)} d^(k-1) T_(ab/d^2), valid for a, b prime to N.
Element multiply(const Element& x, const Element& y, int k)
{
    Element out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            const Rational cab = ca * cb;
            for (std::int64_t d : divisors(gcd(a, b))) out[a / d * (b / d)] += cab * power_int(d, k - 1);
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Rational trace_of(const Element& x, TraceMemo& tr)
{
    Rational s = 0;
    for (const auto& [n, c] : x) s += c * tr(n);
    return s;
}

// Solve g c = b for a non-singular g (Gaussian elimination over Q).
std::vector<Rational> solve(std::vector<std::vector<Rational>> g, std::vector<Rational> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && g[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("trace form: singular Gram matrix");
        std::swap(g[piv], g[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || g[r][col] == 0) continue;
            const Rational f = g[r][col] / g[col][col];
            for (std::size_t c = col; c < n; ++c) g[r][c] -= f * g[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= g[i][i];
    return b;
}

// The trace form (x, y) -> tr(xy) is positive definite on the real span of
// the Hecke operators prime to the level, so x lies in the span of the basis
// iff tr(x^2) equals the squared norm of its projection.
class TraceFormSpan {
public:
    TraceFormSpan(int k, TraceMemo& tr) : k_(k), tr_(tr) {}

    std::size_t size() const { return basis_.size(); }
    const std::vector<std::int64_t>& indices() const { return basis_; }

    // Coordinates of x when it lies in the span.
    std::optional<std::vector<Rational>> coordinates(const Element& x)
    {
        std::vector<Rational> b(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) b[i] = trace_of(multiply(x, {{basis_[i], 1}}, k_), tr_);
        std::vector<Rational> c = basis_.empty() ? std::vector<Rational>{} : solve(gram_, b);
        Rational proj = 0;
        for (std::size_t i = 0; i < c.size(); ++i) proj += c[i] * b[i];
        if (trace_of(multiply(x, x, k_), tr_) != proj) return std::nullopt;
        return c;
    }

    bool add_if_independent(std::int64_t n)
    {
        if (coordinates({{n, 1}})) return false;
        basis_.push_back(n);
        const std::size_t m = basis_.size();
        for (auto& row : gram_) row.resize(m);
        gram_.emplace_back(m);
        for (std::size_t i = 0; i < m; ++i) {
            const Rational v = trace_of(multiply({{basis_[i], 1}}, {{n, 1}}, k_), tr_);
            gram_[i][m - 1] = v;
            gram_[m - 1][i] = v;
        }
        return true;
    }

private:
    int k_;
    TraceMemo& tr_;
    std::vector<std::int64_t> basis_;
    std::vector<std::vector<Rational>> gram_;
};

Integer as_integer(const Rational& r, const char* what)
{
    if (r.get_den() != 1) throw std::domain_error(std::string(what) + ": non-integral value " + to_string(r));
    return r.get_num();
}

std::vector<Integer> power_sums_hecke_powers(int k, std::int64_t level, std::int64_t p, std::size_t count)
{
    TraceMemo tr(k, level);
    const Integer pk = power_int(p, k - 1);
    std::vector<Integer> coeffs{1};  // T_p^m = sum_i coeffs[i] T_{p^i}
    std::vector<Integer> out;
    for (std::size_t m = 1; m <= count; ++m) {
        std::vector<Integer> next(coeffs.size() + 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            if (i >= 1) next[i - 1] += pk * coeffs[i];
        }
        coeffs = std::move(next);
        Rational s = 0;
        std::int64_t q = 1;
        for (std::size_t i = 0; i < coeffs.size(); ++i, q *= p)
            if (coeffs[i] != 0) s += Rational(coeffs[i]) * tr(q);
        out.push_back(as_integer(s, "power_sums"));
    }
    return out;
}

std::vector<Integer> power_sums_trace_form(int k, std::int64_t level, std::int64_t p, std::size_t count)
{
    TraceMemo tr(k, level);
    TraceFormSpan span(k, tr);
    span.add_if_independent(1);

    // Grow the span with small-index T_n until it is stable under T_p.
    const Element tp{{p, 1}};
    std::size_t verified = 0;
    std::int64_t candidate = 2;
    const auto dim = static_cast<std::size_t>(dim_cuspforms(k, level));
    while (verified < span.size()) {
        if (span.coordinates(multiply(tp, {{span.indices()[verified], 1}}, k))) {
            ++verified;
            continue;
        }
        // Not yet stable: add the next independent T_n.
        while (true) {
            if (span.size() > dim) throw std::logic_error("trace form: span exceeds the dimension");
            const std::int64_t n = candidate++;
            if (gcd(n, level) != 1) continue;
            if (span.add_if_independent(n)) break;
            if (candidate > (std::int64_t{1} << 20)) throw std::logic_error("trace form: no stable span found");
        }
    }

    const std::size_t r = span.size();
    std::vector<std::vector<Rational>> mult(r);  // column s: T_p T_s in span coordinates
    for (std::size_t s = 0; s < r; ++s) mult[s] = *span.coordinates(multiply(tp, {{span.indices()[s], 1}}, k));
    std::vector<Rational> traces(r);
    for (std::size_t i = 0; i < r; ++i) traces[i] = tr(span.indices()[i]);

    std::vector<Rational> v(r);
    v[0] = 1;  // T_1
    std::vector<Integer> out;
    for (std::size_t m = 1; m <= count; ++m) {
        std::vector<Rational> w(r);
        for (std::size_t s = 0; s < r; ++s) {
            if (v[s] == 0) continue;
            for (std::size_t i = 0; i < r; ++i) w[i] += mult[s][i] * v[s];
        }
        v = std::move(w);
        Rational t = 0;
        for (std::size_t i = 0; i < r; ++i) t += v[i] * traces[i];
        out.push_back(as_integer(t, "power_sums"));
    }
    return out;
}

}  // namespace

TraceRoute resolve_route(int k, std::int64_t level, std::int64_t p)
{
    const std::int64_t dim = dim_cuspforms(k, level);
    std::int64_t q = 1;
    for (std::int64_t i = 0; i < dim; ++i) {
        if (q > kHeckePowersLimit / p) return TraceRoute::trace_form;
        q *= p;
    }
    return TraceRoute::hecke_powers;
}

std::vector<Integer> power_sums(int k, std::int64_t level, std::int64_t p, std::size_t count, TraceRoute route)
{
    if (!is_prime(p)) throw std::invalid_argument("power_sums: p must be prime");
    check_arguments(k, level, p);
    if (count == 0) return {};
    if (route == TraceRoute::automatic) route = resolve_route(k, level, p);
    if (route == TraceRoute::hecke_powers) return power_sums_hecke_powers(k, level, p, count);
    return power_sums_trace_form(k, level, p, count);
}

IntPolynomial charpoly_from_traces(int k, std::int64_t level, std::int64_t p, TraceRoute route)
{
    const auto dim = static_cast<std::size_t>(dim_cuspforms(k, level));
    const std::vector<Integer> ps = power_sums(k, level, p, dim, route);
    // Newton: m e_m = sum_{i=1}^m (-1)^(i-1) e_(m-i) p_i.
    std::vector<Integer> e(dim + 1);
    e[0] = 1;
    for (std::size_t m = 1; m <= dim; ++m) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= m; ++i) {
            if (i % 2)
                acc += e[m - i] * ps[i - 1];
            else
                acc -= e[m - i] * ps[i - 1];
        }
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), m))
            throw std::domain_error("charpoly_from_traces: non-integral coefficient at degree " + std::to_string(m));
        mpz_divexact_ui(e[m].get_mpz_t(), acc.get_mpz_t(), m);
    }
    std::vector<Integer> coeffs(dim + 1);
    for (std::size_t m = 0; m <= dim; ++m) coeffs[m] = m % 2 ? Integer(-e[m]) : e[m];
    return IntPolynomial(std::move(coeffs));
}

}  // namespace slopes::trace
