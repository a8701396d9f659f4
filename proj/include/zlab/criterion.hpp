#pragma once

#include "zlab/types.hpp"

#include <optional>
#include <vector>

namespace zlab {

struct HyperbolaPoint {
    i64 x = 0;
    i64 y = 0;        // a*x mod q, represented in (-q/2, q/2]
    i64 product = 0;  // x*|y|
    friend bool operator==(const HyperbolaPoint&, const HyperbolaPoint&) = default;
};

enum class DenominatorType { I, II };

struct CriticalDenominator {
    i64 x = 0;
    i64 residue = 0;
    i64 level = 0;
    DenominatorType type = DenominatorType::I;
};

struct MinProduct {
    HyperbolaPoint point;
    bool reduced = true;  // false when gcd(a,q) > 1
};

enum class Verdict { bounded, unbounded, inconclusive };

struct BoundedCertificate {
    Verdict verdict = Verdict::inconclusive;
    HyperbolaPoint minimum;  // global minimizer of x|ax| on [1,q)
    bool direct = false;     // max_quotient(a/q) <= M
};

struct ProductProfile {
    double window_lo = 0;  // t
    double window_hi = 0;  // q/(4Mt)
    std::vector<double> scales;                // dyadic Delta values t*2^i
    std::vector<std::vector<bool>> cell;       // cell[i][j]: Delta1 = scales[i], Delta2 = scales[j]
    std::optional<HyperbolaPoint> min_point;   // over all x in the window
    std::optional<double> g_bound;             // q / min product
};

i64 signed_residue(i64 a, i64 x, i64 q);
HyperbolaPoint hyperbola_point(i64 a, i64 x, i64 q);

// Smallest d >= 0 with L <= (A*d mod m) <= R, or -1.
i64 first_multiple_in_range(i64 A, i64 m, i64 L, i64 R);

MinProduct min_product(i64 a, i64 q, i64 lo, i64 hi);
MinProduct min_product_scan(i64 a, i64 q, i64 lo, i64 hi);

BoundedCertificate check_bounded(i64 a, i64 q, i64 M);

std::vector<CriticalDenominator> critical_denominators(i64 a, i64 q, double t, i64 level);
std::vector<CriticalDenominator> critical_denominators_scan(i64 a, i64 q, double t, i64 level);

bool repulsion_check(i64 a, i64 q, i64 M, double t);

ProductProfile product_profile(i64 a, i64 q, double t, i64 M);
// Oracle: convergent denominators recognised as records of |ax| over a full scan.
ProductProfile product_profile_scan(i64 a, i64 q, double t, i64 M);

}  // namespace zlab
