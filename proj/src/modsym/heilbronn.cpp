#include "slopes/modsym/heilbronn.hpp"

#include <stdexcept>

namespace slopes::modsym {

namespace {

// Nearest integer to a/b, halves rounded away from zero.
std::int64_t round_quotient(std::int64_t a, std::int64_t b)
{
    const bool negative = (a < 0) != (b < 0);
    const std::int64_t aa = a < 0 ? -a : a;
    const std::int64_t bb = b < 0 ? -b : b;
    const std::int64_t q = (2 * aa + bb) / (2 * bb);
    return negative ? -q : q;
}

std::vector<std::vector<Integer>> linear_powers(std::int64_t x_coeff, std::int64_t y_coeff, int degree)
{
    // Entry j of power i is the coefficient of X^j Y^(i-j).
    std::vector<std::vector<Integer>> powers(static_cast<std::size_t>(degree + 1));
    powers[0] = {Integer(1)};
    const Integer xc(static_cast<long>(x_coeff));
    const Integer yc(static_cast<long>(y_coeff));
    for (int i = 1; i <= degree; ++i) {
        const auto& prev = powers[static_cast<std::size_t>(i - 1)];
        std::vector<Integer> next(static_cast<std::size_t>(i + 1));
        for (std::size_t j = 0; j < prev.size(); ++j) {
            if (prev[j] == 0) continue;
            mpz_addmul(next[j + 1].get_mpz_t(), prev[j].get_mpz_t(), xc.get_mpz_t());
            mpz_addmul(next[j].get_mpz_t(), prev[j].get_mpz_t(), yc.get_mpz_t());
        }
        powers[static_cast<std::size_t>(i)] = std::move(next);
    }
    return powers;
}

}  // namespace

std::vector<Mat2> heilbronn_cremona(std::int64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("heilbronn_cremona: p must be prime");
    if (p == 2) return {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};

    std::vector<Mat2> out{{1, 0, 0, p}};
    const std::int64_t half = (p - 1) / 2;
    for (std::int64_t r = -half; r <= half; ++r) {
        std::int64_t x1 = p, x2 = -r, y1 = 0, y2 = 1, a = -p, b = r;
        out.push_back({x1, x2, y1, y2});
        while (b != 0) {
            const std::int64_t q = round_quotient(a, b);
            const std::int64_t c = a - b * q;
            a = -b;
            b = c;
            const std::int64_t x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            const std::int64_t y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push_back({x1, x2, y1, y2});
        }
    }
    return out;
}

MonomialAction::MonomialAction(const Mat2& h, int degree)
    : degree_(degree), x_powers_(linear_powers(h.a, h.b, degree)), y_powers_(linear_powers(h.c, h.d, degree))
{
}

std::vector<Integer> MonomialAction::image(int i) const
{
    const auto& xp = x_powers_[static_cast<std::size_t>(i)];
    const auto& yp = y_powers_[static_cast<std::size_t>(degree_ - i)];
    std::vector<Integer> out(static_cast<std::size_t>(degree_ + 1));
    for (std::size_t s = 0; s < xp.size(); ++s) {
        if (xp[s] == 0) continue;
        for (std::size_t t = 0; t < yp.size(); ++t)
            mpz_addmul(out[s + t].get_mpz_t(), xp[s].get_mpz_t(), yp[t].get_mpz_t());
    }
    return out;
}

}  // namespace slopes::modsym
