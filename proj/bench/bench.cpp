// Wall-clock of each parallel kernel against its serial reference.
// usage: zlab_bench [scale]   (scale 1 is the default, 0 is a quick pass)

#include "zlab/cantor.hpp"
#include "zlab/discrepancy.hpp"
#include "zlab/independence.hpp"
#include "zlab/modular_stats.hpp"
#include "zlab/zaremba.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace zlab;

namespace {

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, const std::function<void()>& par, const std::function<void()>& ser) {
    const double p = seconds(par), s = seconds(ser);
    std::printf("%-34s %10.3f %10.3f %8.2f\n", name.c_str(), p, s, p > 0 ? s / p : 0.0);
    std::fflush(stdout);
}

std::vector<i64> residues(std::mt19937_64& rng, i64 q, i64 n) {
    std::set<i64> s;
    while (static_cast<i64>(s.size()) < n) s.insert(static_cast<i64>(rng() % static_cast<u64>(q)));
    return {s.begin(), s.end()};
}

}  // namespace

int main(int argc, char** argv) {
    const int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    const i64 k = scale <= 0 ? 1 : 4;
    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "parallel", "serial", "ratio");

    const i64 qhi = 5000 * k;
    row("exists_zaremba_range 2.." + std::to_string(qhi) + " M=5",
        [&] { exists_zaremba_range(2, qhi, 5); }, [&] { exists_zaremba_range_serial(2, qhi, 5); });
    row("min_sum_range 2.." + std::to_string(qhi), [&] { min_sum_range(2, qhi); },
        [&] { min_sum_range_serial(2, qhi); });

    const i64 qs = 100003 * k;
    row("find_numerators q=" + std::to_string(qs) + " M=4", [&] { find_numerators(qs, 4); },
        [&] { find_numerators_serial(qs, 4); });

    const double t = 2000.0 * static_cast<double>(k);
    row("count_QM M=10 t=" + std::to_string(static_cast<i64>(t)), [&] { count_QM(10, t); },
        [&] { count_QM_serial(10, t); });

    const i64 sq = 300 * k;
    row("lattice_bound_sweep 2.." + std::to_string(sq), [&] { lattice_bound_sweep(2, sq); },
        [&] { lattice_bound_sweep_serial(2, sq); });

    std::mt19937_64 rng(1);
    PointSet2D P;
    P.den = 4096;
    for (int i = 0; i < 1500 * static_cast<int>(k); ++i)
        P.points.emplace_back(1 + static_cast<i64>(rng() % 4096), 1 + static_cast<i64>(rng() % 4096));
    row("star_discrepancy n=" + std::to_string(P.size()), [&] { star_discrepancy_exact(P); },
        [&] { star_discrepancy_serial(P); });

    const i64 p = 99991;
    const auto A = residues(rng, p, 3000), B = residues(rng, p, 3000);
    const i64 N = 250 * k;
    row("count_T_action N=" + std::to_string(N), [&] { count_T_action(A, B, N, p); },
        [&] { count_T_action_serial(A, B, N, p); });

    const auto U = random_interval_union(p, 100, 300, 1);
    row("intersect_inverse 100x300", [&] { intersect_inverse(U, U); }, [&] { intersect_inverse_serial(U, U); });

    const std::vector<i64> xs{1234, 5678, 9012};
    const std::vector<i64> C{20 * k, 20 * k, 20 * k};
    row("test_independence k=3 C=" + std::to_string(C[0]), [&] { test_independence(xs, C, 1000003); },
        [&] { test_independence_serial(xs, C, 1000003); });
    return 0;
}
