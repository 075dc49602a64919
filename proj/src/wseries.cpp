#include "qeis/wseries.hpp"

#include <numeric>
#include <stdexcept>

namespace qeis {

WSeries WSeries::zero(int degree_bound, const Order& q_order) {
    if (degree_bound < 0) throw std::invalid_argument("WSeries: negative degree bound");
    std::vector<QSeries> c(static_cast<size_t>(degree_bound) + 1, QSeries(1, q_order));
    return WSeries(std::move(c));
}

WSeries::WSeries(std::vector<QSeries> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("WSeries: needs at least the w^0 coefficient");
    int lattice = 1;
    for (const auto& c : coeffs_) lattice = std::lcm(lattice, c.lattice());
    q_order_ = std::nullopt;
    for (const auto& c : coeffs_) q_order_ = order_min(q_order_, c.order());
    for (auto& c : coeffs_) {
        c = c.rescaled(lattice);
        if (q_order_) c = c.truncated(*q_order_);
    }
}

WSeries w_add(const WSeries& a, const WSeries& b) {
    int z = std::min(a.degree_bound(), b.degree_bound());
    std::vector<QSeries> c;
    c.reserve(static_cast<size_t>(z) + 1);
    for (int k = 0; k <= z; ++k) c.push_back(series_add(a.coeff(k), b.coeff(k)));
    return WSeries(std::move(c));
}

WSeries w_sub(const WSeries& a, const WSeries& b) { return w_add(a, w_scale(b, Rational(-1))); }

WSeries w_scale(const WSeries& a, const Rational& s) {
    std::vector<QSeries> c;
    c.reserve(static_cast<size_t>(a.degree_bound()) + 1);
    for (int k = 0; k <= a.degree_bound(); ++k) c.push_back(series_scale(a.coeff(k), s));
    return WSeries(std::move(c));
}

WSeries w_scale_q(const WSeries& a, const QSeries& s) {
    std::vector<QSeries> c;
    c.reserve(static_cast<size_t>(a.degree_bound()) + 1);
    for (int k = 0; k <= a.degree_bound(); ++k) c.push_back(series_mul(a.coeff(k), s));
    return WSeries(std::move(c));
}

WSeries w_mul(const WSeries& a, const WSeries& b) {
    int z = std::min(a.degree_bound(), b.degree_bound());
    std::vector<QSeries> c(static_cast<size_t>(z) + 1, QSeries());
    for (int i = 0; i <= z; ++i) {
        if (a.coeff(i).is_zero() && a.coeff(i).order() == std::nullopt) continue;
        for (int j = 0; i + j <= z; ++j) {
            c[static_cast<size_t>(i + j)] =
                series_add(c[static_cast<size_t>(i + j)], series_mul(a.coeff(i), b.coeff(j)));
        }
    }
    return WSeries(std::move(c));
}

WSeries w_shift(const WSeries& a, int k) {
    if (k < 0) throw std::invalid_argument("w_shift: negative shift");
    std::vector<QSeries> c(static_cast<size_t>(a.degree_bound() + k) + 1,
                           QSeries(1, a.q_order()));
    for (int i = 0; i <= a.degree_bound(); ++i) c[static_cast<size_t>(i + k)] = a.coeff(i);
    return WSeries(std::move(c));
}

namespace {

// a with its w^0 coefficient removed (used by exp/log, both of which split
// off the constant-in-w part first).
WSeries drop_w0(const WSeries& a) {
    std::vector<QSeries> c;
    c.reserve(static_cast<size_t>(a.degree_bound()) + 1);
    c.push_back(QSeries(1, a.q_order()));
    for (int k = 1; k <= a.degree_bound(); ++k) c.push_back(a.coeff(k));
    return WSeries(std::move(c));
}

WSeries w_one(int z, const Order& q_order) {
    WSeries one = WSeries::zero(z, q_order);
    std::vector<QSeries> c;
    c.push_back(series_add(one.coeff(0), QSeries::constant(1)));
    for (int k = 1; k <= z; ++k) c.push_back(one.coeff(k));
    return WSeries(std::move(c));
}

}  // namespace

WSeries w_exp(const WSeries& a) {
    const QSeries& c0 = a.coeff(0);
    if (!c0.is_zero() && c0.terms().begin()->first <= 0)
        throw std::invalid_argument(
            "w_exp: w^0 coefficient must have zero q-constant term; found constant term " +
            rational_to_string(c0.terms().begin()->second));
    int z = a.degree_bound();
    QSeries base = series_exp(c0);
    WSeries nil = drop_w0(a);
    WSeries result = w_one(z, a.q_order());
    WSeries power = w_one(z, a.q_order());
    Rational inv_fact(1);
    for (int n = 1; n <= z; ++n) {
        power = w_mul(power, nil);
        inv_fact /= n;
        result = w_add(result, w_scale(power, inv_fact));
    }
    return w_scale_q(result, base);
}

WSeries w_log(const WSeries& a) {
    const QSeries& c0 = a.coeff(0);
    bool c0_is_one = !c0.is_zero() && c0.terms().size() == 1 &&
                     c0.terms().begin()->first == 0 && c0.terms().begin()->second == 1;
    if (!c0_is_one)
        throw std::invalid_argument("w_log: w^0 coefficient must be the constant series 1, got " +
                                    to_display_string(c0));
    int z = a.degree_bound();
    WSeries b = drop_w0(a);  // a - 1
    WSeries result = WSeries::zero(z, a.q_order());
    WSeries power = w_one(z, a.q_order());
    for (int n = 1; n <= z; ++n) {
        power = w_mul(power, b);
        Rational coef(n % 2 == 1 ? 1 : -1, n);
        coef.canonicalize();
        result = w_add(result, w_scale(power, coef));
    }
    return result;
}

WSeries w_derivative(const WSeries& a) {
    int z = a.degree_bound();
    if (z == 0) return WSeries::zero(0, a.q_order());
    std::vector<QSeries> c;
    c.reserve(static_cast<size_t>(z));
    for (int k = 0; k < z; ++k) c.push_back(series_scale(a.coeff(k + 1), Rational(k + 1)));
    return WSeries(std::move(c));
}

WSeries w_q_derivative(const WSeries& a) {
    std::vector<QSeries> c;
    c.reserve(static_cast<size_t>(a.degree_bound()) + 1);
    for (int k = 0; k <= a.degree_bound(); ++k) c.push_back(q_derivative(a.coeff(k)));
    return WSeries(std::move(c));
}

WSeries sinh_half_kernel(int degree_bound) {
    std::vector<QSeries> c(static_cast<size_t>(degree_bound) + 1, QSeries());
    for (int j = 0; 2 * j <= degree_bound; ++j) {
        // coefficient of w^(2j): (1/2)^(2j) / (2j+1)!
        Rational v(Int(1), int_pow(Int(4), static_cast<unsigned long>(j)) *
                                factorial(static_cast<unsigned long>(2 * j + 1)));
        v.canonicalize();
        c[static_cast<size_t>(2 * j)] = QSeries::constant(v);
    }
    return WSeries(std::move(c));
}

WSeries sinh_half_kernel_reciprocal(int degree_bound) {
    WSeries k = sinh_half_kernel(degree_bound);
    WSeries b = drop_w0(k);  // kernel - 1, supported on degrees >= 2
    WSeries result = w_one(degree_bound, std::nullopt);
    WSeries power = w_one(degree_bound, std::nullopt);
    for (int n = 1; 2 * n <= degree_bound; ++n) {
        power = w_mul(power, b);
        result = w_add(result, w_scale(power, Rational(n % 2 == 1 ? -1 : 1)));
    }
    return result;
}

std::optional<std::tuple<int, Rational, Rational, Rational>> first_mismatch_w(const WSeries& a,
                                                                             const WSeries& b) {
    int z = std::min(a.degree_bound(), b.degree_bound());
    for (int k = 0; k <= z; ++k) {
        if (auto m = first_mismatch(a.coeff(k), b.coeff(k)))
            return std::make_tuple(k, std::get<0>(*m), std::get<1>(*m), std::get<2>(*m));
    }
    return std::nullopt;
}

bool operator==(const WSeries& a, const WSeries& b) { return !first_mismatch_w(a, b); }

}  // namespace qeis
