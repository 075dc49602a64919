#include "qeis/arith.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace qeis {

Rational rational_from_string(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: \"" + s + "\"");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: \"" + s + "\"");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Int binomial(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Int multinomial(const std::vector<unsigned long>& parts) {
    unsigned long total = 0;
    for (unsigned long p : parts) total += p;
    Int result = factorial(total);
    for (unsigned long p : parts) result /= factorial(p);
    return result;
}

bool check_multinomial_divisibility(const std::vector<unsigned long>& parts) {
    if (parts.empty())
        throw std::invalid_argument("check_multinomial_divisibility: empty input");
    unsigned long n = 0, g = 0;
    for (unsigned long p : parts) {
        if (p == 0)
            throw std::invalid_argument("check_multinomial_divisibility: zero part");
        n += p;
        g = std::gcd(g, p);
    }
    Int m = multinomial(parts);
    return mpz_divisible_ui_p(m.get_mpz_t(), n / g) != 0;
}

Rational bernoulli(unsigned long n) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};  // B_0 = 1
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        unsigned long m = cache.size();
        // B_m = -1/(m+1) * sum_{j<m} C(m+1,j) B_j
        Rational s(0);
        for (unsigned long j = 0; j < m; ++j) {
            Rational term = Rational(binomial(m + 1, j)) * cache[j];
            s += term;
        }
        Rational b = -s / Rational(m + 1);
        cache.push_back(b);
    }
    return cache[n];
}

Rational bernoulli_poly(unsigned long n, const Rational& x) {
    Rational s(0);
    for (unsigned long k = 0; k <= n; ++k) {
        Rational term = Rational(binomial(n, k)) * bernoulli(k) * rational_pow(x, n - k);
        s += term;
    }
    return s;
}

Rational rational_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    // base canonical implies base^e canonical, but keep the invariant airtight
    r.canonicalize();
    return r;
}

Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace qeis
