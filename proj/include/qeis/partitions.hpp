#pragma once
// Integer partitions with the rank and crank statistics, exact per-n counts
// N(m,n) and M(m,n) by two independent routes (enumeration vs generating
// function), the phi/psi partition weights, and partition traces.

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "qeis/qseries.hpp"

namespace qeis {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive

    int sum() const;
    int largest() const { return parts.empty() ? 0 : parts.front(); }
    int num_parts() const { return static_cast<int>(parts.size()); }
    // part value j -> multiplicity m_j (only nonzero entries)
    std::map<int, int> multiplicities() const;
};

// All partitions of n, each exactly once, in reverse-lexicographic order
// (largest first part first).  n = 0 yields the single empty partition.
// Guarded by `bound` to keep accidental exponential enumerations out.
std::vector<Partition> partitions_of(int n, int bound = 60);

// rank = largest part - number of parts; empty partition has rank 0.
int rank(const Partition& p);

// crank = largest part when no part equals 1; otherwise mu - o where o is
// the number of ones and mu the number of parts larger than o.  The empty
// partition has crank 0.  (Both n = 0 conventions are choices made here;
// they match the generating-function constant terms.)
int crank(const Partition& p);

// m -> number of partitions of n with rank m, by enumeration.
std::map<int, Int> rank_counts(int n);

// m -> number of partitions of n with combinatorial crank m, by enumeration.
// Note the n = 1 values here differ from the generating-function convention;
// see crank_counts_gf.
std::map<int, Int> crank_counts_brute(int n);

// phi(lambda) = prod_j 2^(m_j) / (m_j! * (j!)^(m_j));
// psi(lambda) = (-1)^(number of parts) * phi(lambda).
Rational phi(const Partition& p);
Rational psi(const Partition& p);

// n-th partition trace: sum over partitions lambda of n of
// weight(lambda) * prod_j h(j)^(m_j); the n = 0 trace is 1 (empty product).
// h(j) may be the zero series for odd j, which prunes those terms exactly.
QSeries partition_trace(int n, const std::function<Rational(const Partition&)>& weight,
                        const std::function<QSeries(int)>& h);

// --- Laurent-per-q-power layer -------------------------------------------
// For each n < q_order, a finite Laurent polynomial in zeta^(1/2), stored
// with doubled exponents so the keys stay integral.  Houses the coefficient
// extraction from the rank/crank product representations.
struct LaurentQ {
    long long q_order = 0;
    std::vector<std::map<long long, Rational>> per_power;  // [n]: doubled zeta exp -> coeff

    void add_term(long long n, long long doubled_zeta_exp, const Rational& c);
};

LaurentQ laurent_mul(const LaurentQ& a, const LaurentQ& b);

// Expansion of (q)_inf / ((zeta q)_inf (zeta^{-1} q)_inf) to q-order N.
// Its q^n coefficient defines M(m,n); at n = 1 this is zeta^{-1} - 1 + zeta,
// the generating-function convention that overrides the combinatorial crank.
LaurentQ crank_counts_gf(long long N);

// Rank generating function via its Lerch-sum representation
// (1-zeta)/(q)_inf * sum_{n in Z} (-1)^n q^(n(3n+1)/2) / (1 - zeta q^n),
// expanded to q-order N with the n < 0 terms rewritten as geometric series
// in zeta^{-1}.  Matches the enumeration route coefficientwise.
LaurentQ rank_lerch_gf(long long N);

// sum_m m^k * (coefficient of zeta^m q^n) as a q-series of order N
// (0^0 = 1, so k = 0 gives the plain coefficient sum).  Requires all zeta
// exponents to be integral (doubled keys even).
QSeries laurent_moment(const LaurentQ& a, int k);

// First (n, doubled zeta exponent, coeff-a, coeff-b) where a and b differ
// below the shared q-order; nullopt if equal.
std::optional<std::tuple<long long, long long, Rational, Rational>> first_mismatch_laurent(
    const LaurentQ& a, const LaurentQ& b);

}  // namespace qeis
