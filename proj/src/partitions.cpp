#include "qeis/partitions.hpp"

#include <stdexcept>

namespace qeis {

int Partition::sum() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

std::map<int, int> Partition::multiplicities() const {
    std::map<int, int> m;
    for (int p : parts) ++m[p];
    return m;
}

namespace {

void enumerate(int remaining, int max_part, std::vector<int>& current,
               std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition{current});
        return;
    }
    for (int first = std::min(remaining, max_part); first >= 1; --first) {
        current.push_back(first);
        enumerate(remaining - first, first, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int bound) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative n");
    if (n > bound)
        throw std::invalid_argument("partitions_of: n = " + std::to_string(n) +
                                    " exceeds the enumeration bound " + std::to_string(bound));
    std::vector<Partition> out;
    std::vector<int> current;
    enumerate(n, n == 0 ? 1 : n, current, out);
    return out;
}

int rank(const Partition& p) { return p.largest() - p.num_parts(); }

int crank(const Partition& p) {
    int ones = 0;
    for (int part : p.parts)
        if (part == 1) ++ones;
    if (ones == 0) return p.largest();
    int mu = 0;
    for (int part : p.parts)
        if (part > ones) ++mu;
    return mu - ones;
}

std::map<int, Int> rank_counts(int n) {
    std::map<int, Int> counts;
    for (const Partition& p : partitions_of(n)) counts[rank(p)] += 1;
    return counts;
}

std::map<int, Int> crank_counts_brute(int n) {
    std::map<int, Int> counts;
    for (const Partition& p : partitions_of(n)) counts[crank(p)] += 1;
    return counts;
}

Rational phi(const Partition& p) {
    Rational r(1);
    for (const auto& [j, mj] : p.multiplicities()) {
        Rational factor(int_pow(Int(2), static_cast<unsigned long>(mj)),
                        factorial(static_cast<unsigned long>(mj)) *
                            int_pow(factorial(static_cast<unsigned long>(j)),
                                    static_cast<unsigned long>(mj)));
        factor.canonicalize();
        r *= factor;
    }
    return r;
}

Rational psi(const Partition& p) {
    Rational r = phi(p);
    return p.num_parts() % 2 == 0 ? r : -r;
}

QSeries partition_trace(int n, const std::function<Rational(const Partition&)>& weight,
                        const std::function<QSeries(int)>& h) {
    if (n == 0) return QSeries::constant(1);
    QSeries total;  // exact zero; summands bring their own orders
    for (const Partition& p : partitions_of(n)) {
        QSeries term = QSeries::constant(weight(p));
        bool zero = false;
        for (const auto& [j, mj] : p.multiplicities()) {
            QSeries hj = h(j);
            if (hj.is_zero() && !hj.order()) {  // exactly zero: kills the product
                zero = true;
                break;
            }
            for (int i = 0; i < mj; ++i) term = series_mul(term, hj);
        }
        if (!zero) total = series_add(total, term);
    }
    return total;
}

void LaurentQ::add_term(long long n, long long z2, const Rational& c) {
    if (n < 0 || n >= q_order || c == 0) return;
    auto& row = per_power[static_cast<size_t>(n)];
    auto it = row.find(z2);
    if (it == row.end()) {
        row.emplace(z2, c);
    } else {
        it->second += c;
        if (it->second == 0) row.erase(it);
    }
}

LaurentQ laurent_mul(const LaurentQ& a, const LaurentQ& b) {
    LaurentQ out;
    out.q_order = std::min(a.q_order, b.q_order);
    out.per_power.resize(static_cast<size_t>(out.q_order));
    for (long long n1 = 0; n1 < a.q_order && n1 < out.q_order; ++n1) {
        if (a.per_power[static_cast<size_t>(n1)].empty()) continue;
        for (long long n2 = 0; n2 + n1 < out.q_order && n2 < b.q_order; ++n2) {
            const auto& rb = b.per_power[static_cast<size_t>(n2)];
            if (rb.empty()) continue;
            for (const auto& [z1, c1] : a.per_power[static_cast<size_t>(n1)]) {
                for (const auto& [z2, c2] : rb) {
                    Rational c = c1 * c2;
                    out.add_term(n1 + n2, z1 + z2, c);
                }
            }
        }
    }
    return out;
}

LaurentQ crank_counts_gf(long long N) {
    if (N < 1) throw std::invalid_argument("crank_counts_gf: order must be >= 1");
    LaurentQ acc;
    acc.q_order = N;
    acc.per_power.resize(static_cast<size_t>(N));
    acc.add_term(0, 0, Rational(1));
    for (long long n = 1; n < N; ++n) {
        // factor (1 - q^n) / ((1 - zeta q^n)(1 - zeta^{-1} q^n)) applied as
        // three successive multiplications
        LaurentQ f;
        f.q_order = N;
        f.per_power.resize(static_cast<size_t>(N));
        f.add_term(0, 0, Rational(1));
        f.add_term(n, 0, Rational(-1));
        acc = laurent_mul(acc, f);
        for (int sign : {+1, -1}) {
            LaurentQ g;
            g.q_order = N;
            g.per_power.resize(static_cast<size_t>(N));
            for (long long j = 0; n * j < N; ++j) g.add_term(n * j, sign * 2 * j, Rational(1));
            acc = laurent_mul(acc, g);
        }
    }
    return acc;
}

LaurentQ rank_lerch_gf(long long N) {
    if (N < 1) throw std::invalid_argument("rank_lerch_gf: order must be >= 1");
    LaurentQ sum;
    sum.q_order = N;
    sum.per_power.resize(static_cast<size_t>(N));
    sum.add_term(0, 0, Rational(1));  // n = 0 term: (1 - zeta)/(1 - zeta) = 1
    // n >= 1: (-1)^n q^(n(3n+1)/2) (1 - zeta) sum_j zeta^j q^(nj)
    for (long long n = 1; n * (3 * n + 1) / 2 < N; ++n) {
        long long base = n * (3 * n + 1) / 2;
        Rational sign(n % 2 == 0 ? 1 : -1);
        for (long long j = 0; base + n * j < N; ++j) {
            sum.add_term(base + n * j, 2 * j, sign);
            sum.add_term(base + n * j, 2 * (j + 1), -sign);
        }
    }
    // n = -m <= -1: the same summand with 1/(1 - zeta q^{-m}) rewritten as
    // -zeta^{-1} q^m sum_j zeta^{-j} q^(mj), giving
    // (-1)^(m+1) (zeta^{-j-1} - zeta^{-j}) q^(m(3m+1)/2 + mj)
    for (long long m = 1; m * (3 * m + 1) / 2 < N; ++m) {
        long long base = m * (3 * m + 1) / 2;
        Rational sign(m % 2 == 0 ? -1 : 1);
        for (long long j = 0; base + m * j < N; ++j) {
            sum.add_term(base + m * j, -2 * (j + 1), sign);
            sum.add_term(base + m * j, -2 * j, -sign);
        }
    }
    // multiply by 1/(q)_inf
    QSeries inv = series_inverse(euler_product(Rational(static_cast<long>(N))));
    LaurentQ p;
    p.q_order = N;
    p.per_power.resize(static_cast<size_t>(N));
    for (const auto& [e, c] : inv.terms()) p.add_term(e, 0, c);
    return laurent_mul(sum, p);
}

QSeries laurent_moment(const LaurentQ& a, int k) {
    QSeries out(1, Rational(static_cast<long>(a.q_order)));
    for (long long n = 0; n < a.q_order; ++n) {
        Rational s(0);
        for (const auto& [z2, c] : a.per_power[static_cast<size_t>(n)]) {
            if (z2 % 2 != 0)
                throw std::invalid_argument("laurent_moment: non-integral zeta exponent");
            Rational m(static_cast<long>(z2 / 2));
            Rational term = rational_pow(m, static_cast<unsigned long>(k)) * c;
            s += term;
        }
        out.add_term(n, s);
    }
    return out;
}

std::optional<std::tuple<long long, long long, Rational, Rational>> first_mismatch_laurent(
    const LaurentQ& a, const LaurentQ& b) {
    long long n_max = std::min(a.q_order, b.q_order);
    for (long long n = 0; n < n_max; ++n) {
        const auto& ra = a.per_power[static_cast<size_t>(n)];
        const auto& rb = b.per_power[static_cast<size_t>(n)];
        auto ia = ra.begin();
        auto ib = rb.begin();
        while (ia != ra.end() || ib != rb.end()) {
            long long z;
            Rational ca(0), cb(0);
            if (ib == rb.end() || (ia != ra.end() && ia->first < ib->first)) {
                z = ia->first;
                ca = ia->second;
                ++ia;
            } else if (ia == ra.end() || ib->first < ia->first) {
                z = ib->first;
                cb = ib->second;
                ++ib;
            } else {
                z = ia->first;
                ca = ia->second;
                cb = ib->second;
                ++ia;
                ++ib;
            }
            if (ca != cb) return std::make_tuple(n, z, ca, cb);
        }
    }
    return std::nullopt;
}

}  // namespace qeis
