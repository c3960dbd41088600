#pragma once

#include "slopes/arith.hpp"

#include <cstdint>
#include <vector>

namespace slopes::modsym {

// Integer 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    std::int64_t det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline constexpr Mat2 kSigma{0, -1, 1, 0};
inline constexpr Mat2 kTau{0, -1, 1, -1};
inline constexpr Mat2 kTauSquared{-1, 1, -1, 0};
inline constexpr Mat2 kStar{-1, 0, 0, 1};

// Cremona's Heilbronn matrices of determinant p (p prime): [[1,0],[0,p]]
// together with the continued-fraction chains of r/p for |r| <= (p-1)/2.
// Summing the right action over this family gives T_p on Manin symbols for
// p not dividing the level and U_p when it does.
std::vector<Mat2> heilbronn_cremona(std::int64_t p);

// Right action P|h (X, Y) = P(aX + bY, cX + dY) on homogeneous polynomials
// of degree w, in the monomial basis X^j Y^(w-j) indexed by j.
class MonomialAction {
public:
    MonomialAction(const Mat2& h, int degree);

    // Coefficients of (X^i Y^(w-i))|h.
    std::vector<Integer> image(int i) const;

private:
    int degree_;
    std::vector<std::vector<Integer>> x_powers_;  // (aX + bY)^i
    std::vector<std::vector<Integer>> y_powers_;  // (cX + dY)^i
};

}  // namespace slopes::modsym
