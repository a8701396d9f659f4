#pragma once

#include "zlab/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zlab {

// Points (x/den, y/den) with numerators in [1, den].
struct PointSet2D {
    i64 den = 1;
    std::vector<std::pair<i64, i64>> points;

    std::size_t size() const noexcept { return points.size(); }
    void validate() const;
};

// Corner box [0,x]x[0,y] (closed) or [0,x)x[0,y) (open), coordinates over den.
struct WitnessBox {
    i64 x_num = 0;
    i64 y_num = 0;
    i64 den = 1;
    bool closed = true;
};

struct DiscrepancyReport {
    Frac64 exact;
    double value = 0;
    WitnessBox witness;
    std::optional<double> zaremba_bound;
    std::optional<double> larcher_bound;
    std::optional<Frac64> general_exact;  // all axis-parallel boxes, n <= 64
    double general_envelope = 0;          // 4 D*
};

struct LarcherSets {
    i64 q = 0;
    i64 g = 0;
    std::vector<i64> one_d;   // numerators over q of {j g / q}, j = 1..q, 0 -> q
    PointSet2D korobov;       // (j/q, g j/q)
    PointSet2D exponential;   // (g^j/q, g^{j+1}/q), j = 1..q-1
};

struct KhReport {
    std::string f_id;
    Frac64 integral;
    Frac64 mean;
    Frac64 error;
    i64 variation = 0;
    Frac64 dstar;
    bool holds = false;
};

enum class SweepMode { certify, exact };

struct LatticeSweepSummary {
    i64 q_lo = 0;
    i64 q_hi = 0;
    SweepMode mode = SweepMode::certify;
    i64 pairs = 0;        // coprime (a,q) covered, both members of each inverse pair
    i64 computed = 0;     // inverse pairs visited (a <= a^{-1})
    i64 grid_coarse = 0;  // settled by the step-16 grid bound
    i64 grid_fine = 0;    // settled by the step-4 grid bound
    i64 exact_runs = 0;   // needed the full kernel
    i64 violations = 0;
    // max of (value used) / min(1, bound): exact D* in exact mode, else the
    // certified upper bound, so an over-estimate of the true worst ratio
    double worst_ratio = 0;
    i64 worst_a = 0;
    i64 worst_q = 0;
};

PointSet2D lattice_points(i64 a, i64 q);
bool is_primitive_root(i64 g, i64 q);
LarcherSets larcher_sequences(i64 g, i64 q);

Frac64 star_discrepancy_1d(const std::vector<i64>& nums, i64 den);

// Critical-coordinate sweep; shards over x-edges.
DiscrepancyReport star_discrepancy_exact(const PointSet2D& P);
DiscrepancyReport star_discrepancy_serial(const PointSet2D& P);
Frac64 general_discrepancy_exact(const PointSet2D& P);

// Row recurrence over the q x q grid for X(a,q); O(q^2) with a flat inner loop.
DiscrepancyReport lattice_star_discrepancy(i64 a, i64 q);

// Upper bound on q^2 D*(X(a,q)) from counts at the corners of a g-grid;
// at most q^2 D* + 2 g q. O(q + (q/g)^2).
i64 lattice_grid_upper(i64 a, i64 q, i64 g);

double zaremba_bound(i64 a, i64 q);

// D*(X(a,q)) <= min(1, zaremba_bound) for every coprime pair. certify tries the
// grid bounds first and falls back to the exact kernel; exact always runs it.
LatticeSweepSummary lattice_bound_sweep(i64 q_lo, i64 q_hi, SweepMode mode = SweepMode::certify);  // parallel
LatticeSweepSummary lattice_bound_sweep_serial(i64 q_lo, i64 q_hi, SweepMode mode = SweepMode::certify);

std::vector<std::string> kh_catalog();
KhReport koksma_hlawka_demo(const std::string& f_id, const PointSet2D& P);

}  // namespace zlab
