#include "qeis/eisenstein.hpp"

#include <stdexcept>

#include "qeis/wseries.hpp"

namespace qeis {

namespace {

Rational frac(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

QSeries eisenstein_G(int k, long long N) {
    if (k < 1 || N < 1) throw std::invalid_argument("eisenstein_G: need k >= 1 and N >= 1");
    if (k % 2 == 1) return QSeries();  // zero by convention
    QSeries out(1, Rational(static_cast<long>(N)));
    out.add_term(0, -bernoulli(static_cast<unsigned long>(k)) / (2 * k));
    for (long long m = 1; m < N; ++m) {
        Int mk = int_pow(Int(static_cast<long>(m)), static_cast<unsigned long>(k - 1));
        for (long long n = 1; n * m < N; ++n) out.add_term(n * m, Rational(mk));
    }
    return out;
}

QSeries g_series(int l, long long N) {
    if (l < 0 || N < 1) throw std::invalid_argument("g_series: need l >= 0 and N >= 1");
    if (l == 0) return QSeries::constant(1);
    if (l % 2 == 1) return QSeries();  // zero by convention
    QSeries out(1, Rational(static_cast<long>(N)));
    Rational c0 = (1 - int_pow(Int(2), static_cast<unsigned long>(l - 1))) *
                  bernoulli(static_cast<unsigned long>(l));
    c0 /= 2 * l;
    out.add_term(0, c0);
    // sum over 2n-1 >= 3m >= 3 of (2n-3m)^(l-1) q^(nm)
    for (long long m = 1; m < N; ++m) {
        for (long long n = (3 * m + 2) / 2; n * m < N; ++n)
            out.add_term(n * m, Rational(int_pow(Int(static_cast<long>(2 * n - 3 * m)),
                                                 static_cast<unsigned long>(l - 1))));
    }
    // minus sum over n-1 >= 6m >= 6 of (n-6m)^(l-1) q^(nm)
    for (long long m = 1; m < N; ++m) {
        for (long long n = 6 * m + 1; n * m < N; ++n)
            out.add_term(n * m, -Rational(int_pow(Int(static_cast<long>(n - 6 * m)),
                                                  static_cast<unsigned long>(l - 1))));
    }
    return out;
}

QSeries g_general(int a, int b, int l, long long N) {
    if (a < 1 || b < 1) throw std::invalid_argument("g_general: need a, b >= 1");
    if (l < 1 || N < 1) throw std::invalid_argument("g_general: need l >= 1 and N >= 1");
    QSeries out(1, Rational(static_cast<long>(N)));
    for (long long m = 1; m < N; ++m) {
        // an - 1 >= bm, i.e. n >= ceil((bm+1)/a)
        for (long long n = (b * m + a) / a; n * m < N; ++n)
            out.add_term(n * m, Rational(int_pow(Int(static_cast<long>(a * n - b * m)),
                                                 static_cast<unsigned long>(l - 1))));
    }
    for (long long m = 1; m < N; ++m) {
        for (long long n = static_cast<long long>(a) * b * m + 1; n * m < N; ++n)
            out.add_term(n * m,
                         -Rational(int_pow(Int(static_cast<long>(n - static_cast<long long>(a) *
                                                                        b * m)),
                                           static_cast<unsigned long>(l - 1))));
    }
    return out;
}

QSeries rank_moment(int k, long long N, RankRoute route, SeriesCache& cache) {
    if (k < 0 || N < 1) throw std::invalid_argument("rank_moment: need k >= 0 and N >= 1");
    if (route == RankRoute::brute) {
        QSeries out(1, Rational(static_cast<long>(N)));
        for (long long n = 0; n < N; ++n) {
            Rational s(0);
            for (const auto& [m, count] : cache.rank_table(static_cast<int>(n))) {
                Rational term =
                    Rational(int_pow(Int(m), static_cast<unsigned long>(k))) * Rational(count);
                s += term;
            }
            out.add_term(n, s);
        }
        return out;
    }
    if (k == 0 || k % 2 == 1)
        throw std::invalid_argument(
            "rank_moment: the closed-form route applies to even k >= 2 only (got k = " +
            std::to_string(k) + ")");
    QSeries inner(1, Rational(static_cast<long>(N)));
    for (long long n = 1; n * (3 * n - 1) / 2 < N; ++n) {
        long long base = n * (3 * n - 1) / 2;
        int sign = (n % 2 == 1) ? 1 : -1;
        for (long long m = 0; base + n * m < N; ++m) {
            Rational v = Rational(sign) * Rational(int_pow(Int(static_cast<long>(m)),
                                                           static_cast<unsigned long>(k)));
            if (v == 0) continue;
            inner.add_term(base + n * m, v);
            inner.add_term(base + n * m + n, -v);  // the (1 - q^n) factor
        }
    }
    return series_mul(series_scale(cache.euler_inverse(N), Rational(2)), inner);
}

QSeries crank_moment(int k, long long N, SeriesCache& cache) {
    if (k < 0 || N < 1) throw std::invalid_argument("crank_moment: need k >= 0 and N >= 1");
    return laurent_moment(cache.crank_gf(N), k);
}

std::vector<QSeries> f_via_log(int K, long long N, SeriesCache& cache) {
    if (K < 1 || N < 1) throw std::invalid_argument("f_via_log: need K >= 1 and N >= 1");
    QSeries p = cache.euler(N);
    std::vector<QSeries> a;
    a.reserve(static_cast<size_t>(K) + 1);
    Rational inv_fact(1);
    for (int k = 0; k <= K; ++k) {
        if (k > 0) inv_fact /= k;
        a.push_back(series_mul(p, series_scale(cache.R(k, N), inv_fact)));
    }
    WSeries aw = w_mul(WSeries(std::move(a)), sinh_half_kernel_reciprocal(K));
    const QSeries& c0 = aw.coeff(0);
    bool c0_is_one = !c0.is_zero() && c0.terms().size() == 1 &&
                     c0.terms().begin()->first == 0 && c0.terms().begin()->second == 1;
    if (!c0_is_one)
        throw std::logic_error("f_via_log: w^0 coefficient of the assembled product is " +
                               to_display_string(c0) + ", expected exactly 1");
    WSeries lg = w_log(aw);
    std::vector<QSeries> f;
    f.reserve(static_cast<size_t>(K) + 1);
    Rational half_fact(1, 2);
    for (int k = 0; k <= K; ++k) {
        if (k > 0) half_fact *= k;
        f.push_back(series_scale(lg.coeff(k), half_fact));
    }
    return f;
}

QSeries f_via_recursion1(int n, long long N, SeriesCache& cache) {
    if (n < 1 || N < 1) throw std::invalid_argument("f_via_recursion1: need n >= 1 and N >= 1");
    QSeries r = series_scale(cache.g(n, N),
                             frac(Int(n), int_pow(Int(2), static_cast<unsigned long>(n - 1))));
    for (int l = 2; l <= n - 2; ++l) {
        QSeries gl = cache.g(l, N);
        if (gl.is_zero() && !gl.order()) continue;  // odd l: exactly zero
        Rational coef = frac(Int(l) * binomial(static_cast<unsigned long>(n - 1),
                                               static_cast<unsigned long>(l)),
                             int_pow(Int(2), static_cast<unsigned long>(l - 2)));
        r = series_sub(r, series_scale(series_mul(cache.f(n - l, N), gl), coef));
    }
    return r;
}

QSeries f_via_recursion2(int n, long long N, SeriesCache& cache) {
    if (n < 1 || N < 1) throw std::invalid_argument("f_via_recursion2: need n >= 1 and N >= 1");
    // bottom-up and self-contained: traces use lower indices from this same
    // recursion, not the cache's default route
    std::vector<QSeries> f(static_cast<size_t>(n) + 1);
    for (int m = 1; m <= n; ++m) {
        QSeries r;  // exact zero
        for (int l = 2; l <= m; ++l) {
            QSeries gl = cache.g(l, N);
            if (gl.is_zero() && !gl.order()) continue;
            QSeries tr = partition_trace(
                m - l, [](const Partition& p) { return psi(p); },
                [&](int j) { return f[static_cast<size_t>(j)]; });
            Rational coef = frac(factorial(static_cast<unsigned long>(m - 1)) * Int(l),
                                 factorial(static_cast<unsigned long>(l - 1)) *
                                     int_pow(Int(2), static_cast<unsigned long>(l - 1)));
            r = series_add(r, series_scale(series_mul(gl, tr), coef));
        }
        f[static_cast<size_t>(m)] = r;
    }
    return f[static_cast<size_t>(n)];
}

QSeries d_f_rhs(int k, long long N, SeriesCache& cache) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("d_f_rhs: defined for even k >= 2");
    QSeries tr = partition_trace(
        k + 2, [](const Partition& p) { return phi(p); },
        [&](int j) {
            return series_sub(series_scale(cache.G(j, N), Rational(3)), cache.f(j, N));
        });
    QSeries r = series_scale(tr, frac(factorial(static_cast<unsigned long>(k)), Int(6)));
    r = series_sub(r, series_scale(cache.f(k + 2, N), frac(Int(k - 1), Int(6) * (k + 1))));
    QSeries s;  // exact zero
    for (int a = 1; a <= k - 1; ++a) {
        QSeries prod = series_mul(cache.f(a + 1, N), cache.f(k - a + 1, N));
        s = series_add(s, series_scale(prod, Rational(binomial(static_cast<unsigned long>(k),
                                                               static_cast<unsigned long>(a)))));
    }
    return series_sub(r, series_scale(s, frac(Int(1), Int(3))));
}

QSeries serre_derivative(const QSeries& a, int weight_k) {
    if (a.is_zero() && !a.order()) return a;  // exactly zero stays exactly zero
    if (!a.order())
        throw std::invalid_argument(
            "serre_derivative: exact polynomial input needs a finite truncation order");
    long long n = key_bound(*a.order(), 1);
    QSeries g2 = eisenstein_G(2, std::max<long long>(n, 1));
    return series_add(q_derivative(a), series_scale(series_mul(g2, a), Rational(2 * weight_k)));
}

// --- SeriesCache ---------------------------------------------------------

std::optional<QSeries> SeriesCache::find_override(char kind, int index, long long N) {
    auto it = overrides_.find({kind, index});
    if (it == overrides_.end()) return std::nullopt;
    return it->second.truncated(Rational(static_cast<long>(N)));
}

void SeriesCache::set_override(char kind, int index, const QSeries& value) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    overrides_[{kind, index}] = value;
    // every derived object is suspect now; recompute lazily from scratch
    cap_g_cache_.clear();
    small_g_cache_.clear();
    f_cache_.clear();
    r_cache_.clear();
    c_cache_.clear();
    euler_cache_.clear();
    euler_inv_cache_.clear();
    crank_gf_cache_.clear();
}

void SeriesCache::clear_overrides() {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    overrides_.clear();
    cap_g_cache_.clear();
    small_g_cache_.clear();
    f_cache_.clear();
    r_cache_.clear();
    c_cache_.clear();
    euler_cache_.clear();
    euler_inv_cache_.clear();
    crank_gf_cache_.clear();
}

QSeries SeriesCache::G(int k, long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto o = find_override('G', k, N)) return *o;
    auto it = cap_g_cache_.find({k, N});
    if (it == cap_g_cache_.end())
        it = cap_g_cache_.emplace(std::make_pair(k, N), eisenstein_G(k, N)).first;
    return it->second;
}

QSeries SeriesCache::g(int l, long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto o = find_override('g', l, N)) return *o;
    auto it = small_g_cache_.find({l, N});
    if (it == small_g_cache_.end())
        it = small_g_cache_.emplace(std::make_pair(l, N), g_series(l, N)).first;
    return it->second;
}

QSeries SeriesCache::f(int k, long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto o = find_override('f', k, N)) return *o;
    auto it = f_cache_.find({k, N});
    if (it == f_cache_.end())
        it = f_cache_.emplace(std::make_pair(k, N), f_via_recursion1(k, N, *this)).first;
    return it->second;
}

QSeries SeriesCache::R(int k, long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto o = find_override('R', k, N)) return *o;
    auto it = r_cache_.find({k, N});
    if (it == r_cache_.end()) {
        QSeries value;
        if (k == 0) value = euler_inverse(N);
        else if (k % 2 == 1) value = QSeries();  // odd moments vanish by symmetry
        else value = rank_moment(k, N, RankRoute::formula, *this);
        it = r_cache_.emplace(std::make_pair(k, N), std::move(value)).first;
    }
    return it->second;
}

QSeries SeriesCache::C(int k, long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto o = find_override('C', k, N)) return *o;
    auto it = c_cache_.find({k, N});
    if (it == c_cache_.end())
        it = c_cache_.emplace(std::make_pair(k, N), crank_moment(k, N, *this)).first;
    return it->second;
}

QSeries SeriesCache::euler(long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = euler_cache_.find(N);
    if (it == euler_cache_.end())
        it = euler_cache_.emplace(N, euler_product(Rational(static_cast<long>(N)))).first;
    return it->second;
}

QSeries SeriesCache::euler_inverse(long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = euler_inv_cache_.find(N);
    if (it == euler_inv_cache_.end())
        it = euler_inv_cache_.emplace(N, series_inverse(euler(N))).first;
    return it->second;
}

LaurentQ SeriesCache::crank_gf(long long N) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = crank_gf_cache_.find(N);
    if (it == crank_gf_cache_.end())
        it = crank_gf_cache_.emplace(N, crank_counts_gf(N)).first;
    return it->second;
}

std::map<int, Int> SeriesCache::rank_table(int n) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = rank_table_cache_.find(n);
    if (it == rank_table_cache_.end())
        it = rank_table_cache_.emplace(n, rank_counts(n)).first;
    return it->second;
}

}  // namespace qeis
