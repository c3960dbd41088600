#pragma once

// Word-size modular arithmetic used by the multimodular routines.

#include "slopes/arith.hpp"

#include <cstdint>
#include <vector>

namespace slopes::modular {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic for an odd modulus below 2^63.
class Montgomery {
public:
    explicit Montgomery(u64 modulus);

    u64 modulus() const { return n_; }

    u64 reduce(u128 t) const
    {
        u64 m = static_cast<u64>(t) * neg_inv_;
        u128 s = t + static_cast<u128>(m) * n_;
        u64 r = static_cast<u64>(s >> 64);
        return r >= n_ ? r - n_ : r;
    }
    u64 to_mont(u64 a) const { return reduce(static_cast<u128>(a % n_) * r2_); }
    u64 from_mont(u64 a) const { return reduce(a); }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    u64 add(u64 a, u64 b) const
    {
        u64 s = a + b;
        return s >= n_ ? s - n_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + n_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : n_ - a; }
    // Montgomery-form inverse of a Montgomery-form unit.
    u64 inv(u64 a) const;
    u64 one() const { return one_; }

    // Residue of an arbitrary integer, in Montgomery form.
    u64 from_integer(const Integer& z) const;

private:
    u64 n_;
    u64 neg_inv_;
    u64 r2_;
    u64 one_;
};

// Plain (non-Montgomery) inverse of a modulo m, a coprime to m.
u64 inverse_mod(u64 a, u64 m);

// The i-th CRT prime: primes just below 2^62 in decreasing order. Thread-safe.
u64 crt_prime(std::size_t i);

// Incremental Chinese remaindering of a vector of integers.
class CrtAccumulator {
public:
    explicit CrtAccumulator(std::size_t length) : values_(length), modulus_(1) {}

    void add(u64 prime, const std::vector<u64>& residues);
    // Bits of the current modulus.
    std::size_t modulus_bits() const { return mpz_sizeinbase(modulus_.get_mpz_t(), 2); }
    // Reconstructed values in the symmetric range (-M/2, M/2].
    std::vector<Integer> symmetric() const;

private:
    std::vector<Integer> values_;
    Integer modulus_;
};

}  // namespace slopes::modular
