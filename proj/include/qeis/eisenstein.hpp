#pragma once
// The named series families: classical Eisenstein series G_k, the
// divisor-like double sums g_l and their (a,b)-generalization, rank moments
// R_k (two independent routes), crank moments C_k, and the Eisenstein-type
// series f_k constructible by three independent routes, together with the
// derivative-side formulas (Ramanujan equations live in the verify catalog;
// here are the Serre derivative and the trace-based derivative right-hand
// side).  A SeriesCache memoizes everything per (index, order) and supports
// coefficient-fault injection for negative testing.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qeis/partitions.hpp"
#include "qeis/qseries.hpp"

namespace qeis {

class SeriesCache;

// G_k = -B_k/(2k) + sum_{n,m>=1, nm<N} m^(k-1) q^(nm) for even k >= 2;
// the zero series for odd k (convention).
QSeries eisenstein_G(int k, long long N);

// g_l = (1-2^(l-1)) B_l/(2l)
//       + sum_{2n-1 >= 3m >= 3, nm<N} (2n-3m)^(l-1) q^(nm)
//       - sum_{n-1 >= 6m >= 6, nm<N} (n-6m)^(l-1) q^(nm)
// for even l >= 2; g_0 = 1; the zero series for odd l (convention).
QSeries g_series(int l, long long N);

// sum_{an-1 >= bm >= b} (an-bm)^(l-1) q^(nm) - sum_{n-1 >= abm >= ab} (n-abm)^(l-1) q^(nm)
// truncated at N; no constant term.  (a,b) = (2,3) recovers g_l minus its
// constant; a = 1 makes the two sums cancel identically.
QSeries g_general(int a, int b, int l, long long N);

enum class RankRoute { formula, brute };

// Rank moments R_k = sum_n sum_m m^k N(m,n) q^n.
//  - brute: partition enumeration (valid for all k >= 0; R_0 = 1/(q)_inf).
//  - formula: (2/(q)_inf) sum_{n>=1} (-1)^(n+1) q^(n(3n-1)/2) (1-q^n)
//             sum_{m>=0} m^k q^(nm), valid for even k >= 2 only (rejected
//             otherwise).
QSeries rank_moment(int k, long long N, RankRoute route, SeriesCache& cache);

// Crank moments C_k = sum_n sum_m m^k M(m,n) q^n with M(m,n) taken from the
// generating-function expansion (n = 1 anomaly included).
QSeries crank_moment(int k, long long N, SeriesCache& cache);

// f_k via the log route: with A(w,q) = (q)_inf * (sum_k R_k w^k/k!) *
// reciprocal-kernel, whose w^0 coefficient must be exactly 1, read
// f_k = (k!/2) * [w^k] log A.  Returns f_0..f_K (odd and 0 indices zero).
std::vector<QSeries> f_via_log(int K, long long N, SeriesCache& cache);

// f_n = (n/2^(n-1)) g_n - sum_{l=2}^{n-2} (l/2^(l-2)) C(n-1,l) f_{n-l} g_l,
// built bottom-up from lower indices computed by the same recursion.
QSeries f_via_recursion1(int n, long long N, SeriesCache& cache);

// f_n = sum_{l=2}^{n} ((n-1)! l / ((l-1)! 2^(l-1))) g_l Tr_{n-l}(psi, f),
// with the traces taken over lower-index f's from the same recursion.
QSeries f_via_recursion2(int n, long long N, SeriesCache& cache);

// Right-hand side of the derivative formula for f_k (even k >= 2):
//   (k!/6) Tr_{k+2}(phi, 3G - f) - ((k-1)/(6(k+1))) f_{k+2}
//   - (1/3) sum_{a=1}^{k-1} C(k,a) f_{a+1} f_{k-a+1}
// which the verify catalog compares against q_derivative(f_k).
QSeries d_f_rhs(int k, long long N, SeriesCache& cache);

// Serre derivative of a weight-k form: D(a) + 2k G_2 a, at a's order.
QSeries serre_derivative(const QSeries& a, int weight_k);

// Memoizing store for every series family, keyed by (index, q-order).
// Thread-safe behind one lock (checks may run in parallel).  Overrides
// replace a family member wholesale and clear all derived caches, so they
// must be installed before dependents are requested; they exist for fault
// injection in tests and the CLI.
class SeriesCache {
  public:
    QSeries G(int k, long long N);
    QSeries g(int l, long long N);
    QSeries f(int k, long long N);  // recursion-1 route
    QSeries R(int k, long long N);  // formula route (even k), 1/(q)_inf at k=0, zero for odd k
    QSeries C(int k, long long N);  // generating-function route
    QSeries euler(long long N);
    QSeries euler_inverse(long long N);
    LaurentQ crank_gf(long long N);
    std::map<int, Int> rank_table(int n);

    // kind in {'G','g','f','R','C'}; the stored series is returned (truncated
    // to the requested order when finer) instead of the computed one.
    void set_override(char kind, int index, const QSeries& value);
    void clear_overrides();

  private:
    std::optional<QSeries> find_override(char kind, int index, long long N);

    std::recursive_mutex mu_;
    std::map<std::pair<int, long long>, QSeries> cap_g_cache_, small_g_cache_, f_cache_,
        r_cache_, c_cache_;
    std::map<long long, QSeries> euler_cache_, euler_inv_cache_;
    std::map<long long, LaurentQ> crank_gf_cache_;
    std::map<int, std::map<int, Int>> rank_table_cache_;
    std::map<std::pair<char, int>, QSeries> overrides_;
};

}  // namespace qeis
