#pragma once

#include "zlab/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zlab {

// x = K(r_1..r_s), x_hat = K(r_2..r_s). Digits need not be canonical.
struct ContinuantPair {
    std::vector<u64> digits;
    BigInt x{1};
    BigInt x_hat{0};

    static ContinuantPair from_digits(std::vector<u64> digits);
};

BigInt wedge_d(const ContinuantPair& X, const ContinuantPair& Y);

struct CrossRatioResult {
    bool d_cr = false;
    bool d_cr_hat = false;
    bool d_cr_cr = false;
    bool all() const { return d_cr && d_cr_hat && d_cr_cr; }
};

CrossRatioResult cross_ratio_check(const ContinuantPair& X, const ContinuantPair& Y, const ContinuantPair& Z,
                                   const ContinuantPair& X_star);

struct IndependenceCertificate {
    std::vector<i64> xs;
    std::vector<i64> bounds;
    bool independent = true;
    std::vector<i64> relation;  // first nonzero entry positive
};

// Exhaustive scan of the box prod [-C_j, C_j]; capacity_error above 10^8 vectors.
IndependenceCertificate test_independence(const std::vector<i64>& xs, const std::vector<i64>& C, i64 q);
IndependenceCertificate test_independence_serial(const std::vector<i64>& xs, const std::vector<i64>& C, i64 q);

enum class BoxCase { zero_sum, small_sum };

struct DirichletOutcome {
    BoxCase kind = BoxCase::zero_sum;
    std::vector<i64> m;
    i64 sum = 0;
    std::vector<double> R;
};

std::vector<double> dirichlet_radii(const std::vector<i64>& Xs, double T);
DirichletOutcome dirichlet_box(const std::vector<i64>& xs, const std::vector<i64>& Xs, double T, i64 q);

struct RepulsionOutcome {
    bool holds = false;
    bool vacuous = false;
    std::vector<i64> m;
    i64 sum = 0;
    i64 residue = 0;  // a * sum, represented in (-q/2, q/2]
    double threshold = 0;
};

RepulsionOutcome repulsion_dependent(i64 a, i64 q, const std::vector<i64>& xs, const std::vector<i64>& Xs, i64 M,
                                     double t);

struct Triple {
    i64 alpha = 0, beta = 0, gamma = 0;
};

bool triple_uniqueness(i64 x, i64 y, i64 z, Triple T1, Triple T2, const std::vector<i64>& C,
                       const std::vector<i64>& Cp, i64 q, i64 M, double t);

enum class Check { holds, fails, not_applicable };
std::string to_string(Check c);

struct InequalityReport {
    Check status = Check::not_applicable;
    double lhs = 0;
    double rhs = 0;
};

struct DistanceReport {
    std::size_t l = 0;  // first index (1-based) where the digit strings differ
    u64 r_l = 0, rp_l = 0;
    BigInt d;
    InequalityReport distance;
    InequalityReport lower;
    InequalityReport upper;
};

DistanceReport distance_bounds_check(i64 a, i64 b, i64 q, const ContinuantPair& X, const ContinuantPair& Y, i64 Mt);

// Instances: denominators x of convergents of a/q, t < x < q/t, for a in one
// interval J of Z_M(t). 'group' numbers the J intervals within (q, M).
struct HarvestInstance {
    i64 q = 0;
    i64 M = 0;
    double t = 0;
    i64 group = 0;
    i64 a = 0;
    std::vector<u64> digits;
    i64 x = 0;
    i64 x_hat = 0;
};

struct K2Window {
    double t = 0;
    i64 C = 0;  // 0 when the window is empty
    double N = 0;
};

// t = ceil(sqrt(q / N_max)) with N_max^{3/2} = sqrt(q) / (2 (M+2)^2), and the
// largest C with N^{3/2} <= sqrt(q) / (2 (M+2)^2 C) and C < t/4.
K2Window k2_window(i64 q, i64 M);

std::vector<HarvestInstance> harvest(i64 q, i64 M, double t);
std::string to_json_line(const HarvestInstance& h);

struct K2Summary {
    i64 groups = 0;
    i64 instances = 0;
    i64 pairs = 0;
    i64 dependent_pairs = 0;
    i64 gcd_violations = 0;     // gcd(x1,x2) >= 4 (M+2)^2 floor(N)^2
    i64 repulsion_checks = 0;
    i64 repulsion_failures = 0;
};

// Harvests every prime q in [q_lo, q_hi] for each M, then tests all pairs
// inside each J group and the repulsion property for every a.
K2Summary k2_sweep(i64 q_lo, i64 q_hi, const std::vector<i64>& Ms);

}  // namespace zlab
