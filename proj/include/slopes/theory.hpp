#pragma once

#include "slopes/arith.hpp"
#include "slopes/newton.hpp"
#include "slopes/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slopes::theory {

// Weight k, tame level N and prime p with p not dividing N.
struct HeckeContext {
    std::int64_t p = 0;
    std::int64_t N = 0;
    int k = 0;

    // Throws std::invalid_argument unless p is prime, N >= 1, p does not divide N and k >= 2.
    static HeckeContext make(std::int64_t p, std::int64_t N, int k);
};

// Source of det(1 - T_p X) on S_k(Gamma0(M)). Implementations must be safe to
// call from several threads at once.
class CharpolyProvider {
public:
    virtual ~CharpolyProvider() = default;
    // Defined for even k >= 2; T_p when p does not divide the level, U_p otherwise.
    virtual IntPolynomial charpoly(int k, std::int64_t level, std::int64_t p) = 0;
};

enum class Engine { modsym, trace, both };

Engine parse_engine(const std::string& name);
std::string engine_name(Engine e);

// Modular symbols for everything; trace formula where p does not divide the
// level (U_p still from modular symbols); both = compute both where possible
// and throw modsym::ConsistencyError on disagreement.
std::shared_ptr<CharpolyProvider> make_provider(Engine engine);

struct TpSlopes {
    IntPolynomial charpoly;
    SlopeMultiset slopes;
    std::int64_t dim = 0;
    std::int64_t zero_eigenvalues = 0;
};

// Newton slopes of T_p on S_k(Gamma0(N)). Odd k gives the zero space without
// consulting the provider.
TpSlopes tp_slopes(const HeckeContext& ctx, CharpolyProvider& provider);

struct RegularityRow {
    int k = 0;
    SlopeMultiset slopes;
    std::int64_t dim = 0;
    std::int64_t zero_eigenvalues = 0;
    bool violation = false;
};

struct RegularityVerdict {
    std::int64_t p = 0;
    std::int64_t N = 0;
    bool regular = true;
    std::vector<RegularityRow> table;
    // Least weight in the table whose row violates the condition.
    std::optional<int> j;
};

// Weights examined: 2..floor((p+3)/2) for odd p; 2 and 4 for p = 2.
std::vector<int> regularity_weights(std::int64_t p);

// Odd p: every row has all slopes 0. p = 2: row 2 all 0, row 4 all in {0, 1}.
// A zero eigenvalue in any row is a violation.
RegularityVerdict is_regular(std::int64_t p, std::int64_t N, CharpolyProvider& provider);

struct OldPair {
    // T_p slope; empty for a zero eigenvalue a_p = 0.
    std::optional<Rational> source;
    Rational first;
    Rational second;
};

struct UpSlopeAssembly {
    HeckeContext ctx;
    std::vector<OldPair> old_pairs;  // one per T_p eigenvalue, with multiplicity
    Rational new_slope;
    std::int64_t new_multiplicity = 0;
    SlopeMultiset combined;
};

// Slopes of X^2 - a X + p^(k-1) given only v = v_p(a) (empty when a = 0):
// the lower hull of (0, 0), (1, v), (2, k-1).
std::pair<Rational, Rational> refinement_pair(const std::optional<Rational>& v, int k);

// U_p slopes at level Np predicted from T_p at level N plus the p-new part.
// Throws modsym::ConsistencyError on a negative p-new dimension.
UpSlopeAssembly up_assembly(const HeckeContext& ctx, CharpolyProvider& provider);

// Newton slopes of U_p on S_k(Gamma0(Np)).
SlopeMultiset up_slopes_direct(const HeckeContext& ctx, CharpolyProvider& provider);

enum class WitnessSource { old_refinement, direct };
std::string source_name(WitnessSource s);

struct Witness {
    int k = 0;
    Rational slope;
    WitnessSource source = WitnessSource::direct;
};

// max(50, j + 2(p - 1)).
int default_k_max(std::int64_t p, int j);

// First even k in 2..k_max carrying a slope strictly in (0, 1), with the
// smallest such slope. Weight 2 uses the U_p assembly at level Np; k > 2 uses
// T_p slopes at level N, which have the same part in (0, 1).
std::optional<Witness> find_fractional_witness(std::int64_t p, std::int64_t N, int k_max, CharpolyProvider& provider);

enum class Prediction { k_equals_j, k_equals_j_plus_p_minus_1, mismatch, not_found };
std::string prediction_text(Prediction p);

struct MinimalWitnessReport {
    RegularityVerdict verdict;
    int k_max = 0;
    std::optional<Witness> witness;
    Prediction prediction = Prediction::not_found;
};

// Compare the minimal witness weight with {j, j + p - 1}. A mismatch is an
// observation, not an error. Throws std::invalid_argument for a regular pair.
MinimalWitnessReport minimal_witness_report(std::int64_t p, std::int64_t N, std::optional<int> k_max,
                                            CharpolyProvider& provider);
MinimalWitnessReport minimal_witness_report(RegularityVerdict verdict, std::optional<int> k_max,
                                            CharpolyProvider& provider);

// 2 + j + (p - 1) p^n.
Integer weight_sequence(std::int64_t j, std::int64_t p, std::int64_t n);

// h < k - 1.
bool classicality_filter(const Rational& h, int k);

struct RefinementCase {
    int k = 0;
    std::optional<Rational> source;
    std::pair<Rational, Rational> pair;
    bool fractional = false;
};

struct P2RefinementReport {
    std::int64_t N = 0;
    RegularityVerdict verdict;
    // First non-integral T_2 slope at weight 2 or 4, as (k, slope).
    std::optional<std::pair<int, Rational>> nonintegral;
    // Violating eigenvalues with an integral slope (1 at weight 2; 2 or 3 at
    // weight 4) or a zero eigenvalue: the refinement has to supply the fraction.
    std::vector<RefinementCase> cases;
    // Violating eigenvalues whose T_2 slope is already non-integral.
    std::vector<RefinementCase> nonintegral_sources;
    // True when every violating eigenvalue refines to a fractional pair.
    bool fractional_everywhere = false;
};

// The p = 2 case analysis for odd N.
P2RefinementReport p2_refinement_check(std::int64_t N, CharpolyProvider& provider);

}  // namespace slopes::theory
