#include "slopes/modular.hpp"

#include <mutex>
#include <stdexcept>

namespace slopes::modular {

Montgomery::Montgomery(u64 modulus) : n_(modulus)
{
    if (modulus % 2 == 0 || modulus >> 63) throw std::invalid_argument("Montgomery: modulus must be odd and < 2^63");
    u64 inv = modulus;
    for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
    neg_inv_ = ~inv + 1;
    u64 r = (~u64{0} % n_ + 1) % n_;  // 2^64 mod n
    r2_ = static_cast<u64>(static_cast<u128>(r) * r % n_);
    one_ = r;
}

u64 Montgomery::inv(u64 a) const
{
    return to_mont(inverse_mod(from_mont(a), n_));
}

u64 Montgomery::from_integer(const Integer& z) const
{
    u64 r = mpz_fdiv_ui(z.get_mpz_t(), n_);
    return to_mont(r);
}

u64 inverse_mod(u64 a, u64 m)
{
    // Extended Euclid on signed 128-bit to avoid overflow.
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("inverse_mod: not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

u64 crt_prime(std::size_t i)
{
    static std::mutex mutex;
    static std::vector<u64> primes;
    std::lock_guard lock(mutex);
    while (primes.size() <= i) {
        u64 c = primes.empty() ? ((u64{1} << 62) - 1) : primes.back() - 2;
        Integer z;
        while (true) {
            mpz_set_ui(z.get_mpz_t(), c);
            if (mpz_probab_prime_p(z.get_mpz_t(), 40)) break;
            c -= 2;
        }
        primes.push_back(c);
    }
    return primes[i];
}

void CrtAccumulator::add(u64 prime, const std::vector<u64>& residues)
{
    if (residues.size() != values_.size()) throw std::invalid_argument("CrtAccumulator: length mismatch");
    const u64 m_mod = mpz_fdiv_ui(modulus_.get_mpz_t(), prime);
    const u64 m_inv = inverse_mod(m_mod, prime);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        u64 cur = mpz_fdiv_ui(values_[i].get_mpz_t(), prime);
        u64 diff = residues[i] >= cur ? residues[i] - cur : residues[i] + prime - cur;
        u64 t = static_cast<u64>(static_cast<u128>(diff) * m_inv % prime);
        if (t == 0) continue;
        mpz_addmul_ui(values_[i].get_mpz_t(), modulus_.get_mpz_t(), t);
    }
    mpz_mul_ui(modulus_.get_mpz_t(), modulus_.get_mpz_t(), prime);
}

std::vector<Integer> CrtAccumulator::symmetric() const
{
    Integer half = modulus_ / 2;
    std::vector<Integer> out = values_;
    for (auto& v : out)
        if (v > half) v -= modulus_;
    return out;
}

}  // namespace slopes::modular
