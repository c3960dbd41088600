#pragma once

#include "slopes/arith.hpp"
#include "slopes/polynomial.hpp"

#include <cstdint>
#include <vector>

namespace slopes::trace {

// tr T_n on S_k(Gamma0(N)) by the Eichler-Selberg trace formula, for even
// k >= 2 and gcd(n, N) = 1 (std::invalid_argument otherwise).
//
// The identity (scalar) terms t = +-2 sqrt(n) are written as part of the
// elliptic sum with the class number H(0); see calibrate_h0().
Rational trace_Tn(int k, std::int64_t level, std::int64_t n);

// Same formula with an explicit value for H(0).
Rational trace_Tn_with_h0(int k, std::int64_t level, std::int64_t n, const Rational& h0);

// Solve tr T_1 = dim S_k(Gamma0(N)) for H(0) at each (k, N) of the grid and
// return the common value. Throws std::logic_error if two grid points disagree.
Rational calibrate_h0(const std::vector<std::pair<int, std::int64_t>>& grid);

enum class TraceRoute {
    automatic,
    // tr T_p^m from trace_Tn(p^i), i <= m, via T_{p^(m+1)} = T_p T_{p^m} - p^(k-1) T_{p^(m-1)}.
    hecke_powers,
    // tr T_p^m from the trace form on a T_p-stable span of small-index T_n.
    trace_form,
};

// Power sums tr(T_p^m) for m = 1..count on S_k(Gamma0(N)), p prime, p not dividing N.
std::vector<Integer> power_sums(int k, std::int64_t level, std::int64_t p, std::size_t count,
                                TraceRoute route = TraceRoute::automatic);

// The route automatic resolves to for (k, N, p).
TraceRoute resolve_route(int k, std::int64_t level, std::int64_t p);

// det(1 - T_p X) on S_k(Gamma0(N)) from power sums via Newton's identities.
// std::domain_error if a coefficient comes out non-integral.
IntPolynomial charpoly_from_traces(int k, std::int64_t level, std::int64_t p,
                                   TraceRoute route = TraceRoute::automatic);

}  // namespace slopes::trace
