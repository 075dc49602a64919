#include "qeis/qseries.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qeis {

namespace {

Rational make_frac(long long num, long long den) {
    Rational r(Int(static_cast<long>(num)), Int(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

// order + shift with nullopt acting as +infinity
Order order_shift(const Order& o, const std::optional<Rational>& shift) {
    if (!o || !shift) return std::nullopt;
    return *o + *shift;
}

}  // namespace

QSeries::QSeries(int lattice, Order order) : lattice_(lattice), order_(std::move(order)) {
    if (lattice_ < 1) throw std::invalid_argument("QSeries: lattice denominator must be >= 1");
}

QSeries QSeries::constant(const Rational& c) {
    QSeries s;
    s.add_term(0, c);
    return s;
}

QSeries QSeries::monomial(const Rational& c, const Rational& e) {
    Rational ec = e;
    ec.canonicalize();
    long long d = ec.get_den().get_si();
    QSeries s(static_cast<int>(d));
    s.add_term(ec.get_num().get_si(), c);
    return s;
}

void QSeries::add_term(Exp e, const Rational& c) {
    if (order_ && e >= key_bound(*order_, lattice_)) return;  // beyond the horizon: unknown
    if (c == 0) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
        coeffs_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Rational QSeries::coeff(const Rational& e) const {
    if (order_ && e >= *order_)
        throw std::domain_error("QSeries::coeff: exponent " + rational_to_string(e) +
                                " is at or beyond the truncation order " +
                                rational_to_string(*order_));
    Rational scaled = e * lattice_;
    scaled.canonicalize();
    if (scaled.get_den() != 1) return Rational(0);  // off-lattice exponents carry nothing
    auto it = coeffs_.find(scaled.get_num().get_si());
    return it == coeffs_.end() ? Rational(0) : it->second;
}

std::optional<Rational> QSeries::valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return make_frac(coeffs_.begin()->first, lattice_);
}

QSeries QSeries::rescaled(int new_lattice) const {
    if (new_lattice % lattice_ != 0)
        throw std::invalid_argument("QSeries::rescaled: new lattice must be a multiple of " +
                                    std::to_string(lattice_));
    if (new_lattice == lattice_) return *this;
    int factor = new_lattice / lattice_;
    QSeries out(new_lattice, order_);
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e * factor, c);
    return out;
}

QSeries QSeries::truncated(const Rational& new_order) const {
    Order o = order_min(order_, new_order);
    QSeries out(lattice_, o);
    Exp bound = key_bound(*o, lattice_);
    for (const auto& [e, c] : coeffs_) {
        if (e >= bound) break;
        out.coeffs_.emplace(e, c);
    }
    return out;
}

Order order_min(const Order& a, const Order& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

QSeries::Exp key_bound(const Rational& order, int lattice) {
    // smallest integer strictly greater than order*lattice - 1, i.e. ceil(order*lattice)
    Rational scaled = order * lattice;
    scaled.canonicalize();
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return q.get_si();
}

QSeries series_add(const QSeries& a, const QSeries& b) {
    int L = std::lcm(a.lattice(), b.lattice());
    QSeries ar = a.rescaled(L), br = b.rescaled(L);
    QSeries out(L, order_min(ar.order(), br.order()));
    for (const auto& [e, c] : ar.coeffs_) out.add_term(e, c);
    for (const auto& [e, c] : br.coeffs_) out.add_term(e, c);
    return out;
}

QSeries series_sub(const QSeries& a, const QSeries& b) { return series_add(a, series_neg(b)); }

QSeries series_neg(const QSeries& a) { return series_scale(a, Rational(-1)); }

QSeries series_scale(const QSeries& a, const Rational& s) {
    QSeries out(a.lattice(), a.order());
    if (s == 0) return out;
    for (const auto& [e, c] : a.terms()) {
        Rational v = c * s;
        out.add_term(e, v);
    }
    return out;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
    int L = std::lcm(a.lattice(), b.lattice());
    QSeries ar = a.rescaled(L), br = b.rescaled(L);
    Order oc = order_min(order_shift(ar.order(), br.valuation()),
                         order_shift(br.order(), ar.valuation()));
    QSeries out(L, oc);
    std::optional<QSeries::Exp> bound;
    if (oc) bound = key_bound(*oc, L);
    for (const auto& [e1, c1] : ar.coeffs_) {
        for (const auto& [e2, c2] : br.coeffs_) {
            QSeries::Exp e = e1 + e2;
            if (bound && e >= *bound) break;  // b's keys ascend, rest of row is out
            Rational v = c1 * c2;
            out.add_term(e, v);
        }
    }
    return out;
}

QSeries series_inverse(const QSeries& a) {
    if (a.is_zero())
        throw std::invalid_argument("series_inverse: no nonzero term to invert");
    const auto& terms = a.terms();
    QSeries::Exp v = terms.begin()->first;
    if (!a.order()) {
        if (terms.size() == 1) {
            QSeries out(a.lattice());
            Rational c = 1 / terms.begin()->second;
            out.add_term(-v, c);
            return out;
        }
        throw std::invalid_argument(
            "series_inverse: exact polynomial input needs a finite truncation order");
    }
    // a = q^(v/d) * u with u a unit; invert u by the standard recurrence.
    Rational order_u = *a.order() - make_frac(v, a.lattice());
    QSeries::Exp bound = key_bound(order_u, a.lattice());
    if (bound < 1) bound = 1;  // leading coefficient itself is always known
    std::vector<Rational> r(static_cast<size_t>(bound));
    const Rational& u0 = terms.begin()->second;
    r[0] = 1 / u0;
    for (QSeries::Exp e = 1; e < bound; ++e) {
        Rational s(0);
        for (auto it = std::next(terms.begin()); it != terms.end(); ++it) {
            QSeries::Exp k = it->first - v;  // unit key
            if (k > e) break;
            Rational t = it->second * r[static_cast<size_t>(e - k)];
            s += t;
        }
        if (s != 0) r[static_cast<size_t>(e)] = -s / u0;
    }
    Rational out_order = *a.order() - make_frac(2 * v, a.lattice());
    QSeries out(a.lattice(), out_order);
    for (QSeries::Exp e = 0; e < bound; ++e)
        if (r[static_cast<size_t>(e)] != 0) out.add_term(e - v, r[static_cast<size_t>(e)]);
    return out;
}

QSeries series_exp(const QSeries& a) {
    if (!a.is_zero() && a.terms().begin()->first <= 0)
        throw std::invalid_argument(
            "series_exp: input must have zero constant term and no negative exponents; found "
            "coefficient " +
            rational_to_string(a.terms().begin()->second) + " at exponent " +
            rational_to_string(make_frac(a.terms().begin()->first, a.lattice())));
    if (a.is_zero()) {
        QSeries out(a.lattice(), a.order());
        out.add_term(0, Rational(1));
        return out;
    }
    if (!a.order())
        throw std::invalid_argument("series_exp: input needs a finite truncation order");
    QSeries::Exp bound = key_bound(*a.order(), a.lattice());
    std::vector<Rational> f(static_cast<size_t>(std::max<QSeries::Exp>(bound, 1)));
    f[0] = 1;
    // e * f_e = sum over terms a_k of k * a_k * f_{e-k}
    for (QSeries::Exp e = 1; e < bound; ++e) {
        Rational s(0);
        for (const auto& [k, c] : a.terms()) {
            if (k > e) break;
            Rational t = Rational(static_cast<long>(k)) * c * f[static_cast<size_t>(e - k)];
            s += t;
        }
        if (s != 0) f[static_cast<size_t>(e)] = s / static_cast<long>(e);
    }
    QSeries out(a.lattice(), a.order());
    for (QSeries::Exp e = 0; e < bound; ++e)
        if (f[static_cast<size_t>(e)] != 0) out.add_term(e, f[static_cast<size_t>(e)]);
    return out;
}

QSeries series_log(const QSeries& a) {
    if (a.is_zero() || a.terms().begin()->first < 0 || a.terms().begin()->first > 0 ||
        a.terms().begin()->second != 1)
        throw std::invalid_argument(
            "series_log: input must have constant term exactly 1 and no negative exponents; "
            "leading term is " +
            (a.is_zero() ? std::string("0")
                         : rational_to_string(a.terms().begin()->second) + " * q^" +
                               rational_to_string(make_frac(a.terms().begin()->first,
                                                            a.lattice()))));
    if (a.terms().size() == 1) {  // a == 1 exactly (to its order)
        return QSeries(a.lattice(), a.order());
    }
    if (!a.order())
        throw std::invalid_argument("series_log: input needs a finite truncation order");
    QSeries::Exp bound = key_bound(*a.order(), a.lattice());
    std::vector<Rational> g(static_cast<size_t>(std::max<QSeries::Exp>(bound, 1)));
    // g_e = a_e - (1/e) * sum over terms a_k (k >= 1) of (e-k) * g_{e-k} * a_k
    for (QSeries::Exp e = 1; e < bound; ++e) {
        Rational s(0);
        for (auto it = std::next(a.terms().begin()); it != a.terms().end(); ++it) {
            QSeries::Exp k = it->first;
            if (k >= e) break;
            Rational t = Rational(static_cast<long>(e - k)) * g[static_cast<size_t>(e - k)] *
                         it->second;
            s += t;
        }
        auto ae = a.terms().find(e);
        Rational val = (ae == a.terms().end() ? Rational(0) : ae->second);
        val -= s / static_cast<long>(e);
        g[static_cast<size_t>(e)] = val;
    }
    QSeries out(a.lattice(), a.order());
    for (QSeries::Exp e = 1; e < bound; ++e)
        if (g[static_cast<size_t>(e)] != 0) out.add_term(e, g[static_cast<size_t>(e)]);
    return out;
}

QSeries q_derivative(const QSeries& a) {
    QSeries out(a.lattice(), a.order());
    for (const auto& [e, c] : a.terms()) {
        if (e == 0) continue;
        Rational v = c * make_frac(e, a.lattice());
        out.add_term(e, v);
    }
    return out;
}

QSeries euler_product(const Rational& order) {
    if (order < 1) throw std::invalid_argument("euler_product: order must be >= 1");
    QSeries::Exp bound = key_bound(order, 1);
    std::vector<Rational> p(static_cast<size_t>(bound));
    p[0] = 1;
    for (QSeries::Exp n = 1; n < bound; ++n) {
        for (QSeries::Exp e = bound - 1; e >= n; --e) {
            if (p[static_cast<size_t>(e - n)] != 0)
                p[static_cast<size_t>(e)] -= p[static_cast<size_t>(e - n)];
        }
    }
    QSeries out(1, order);
    for (QSeries::Exp e = 0; e < bound; ++e)
        if (p[static_cast<size_t>(e)] != 0) out.add_term(e, p[static_cast<size_t>(e)]);
    return out;
}

QSeries eta_series(const Rational& order) {
    QSeries ep = euler_product(order);
    QSeries out(24, order + make_frac(1, 24));
    for (const auto& [e, c] : ep.terms()) out.add_term(24 * e + 1, c);
    return out;
}

Int max_denominator(const QSeries& a, const Rational& from_exponent) {
    Int l(1);
    for (const auto& [e, c] : a.terms()) {
        if (make_frac(e, a.lattice()) < from_exponent) continue;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    return l;
}

bool operator==(const QSeries& a, const QSeries& b) { return !first_mismatch(a, b); }

std::optional<std::tuple<Rational, Rational, Rational>> first_mismatch(const QSeries& a,
                                                                       const QSeries& b) {
    int L = std::lcm(a.lattice(), b.lattice());
    QSeries ar = a.rescaled(L), br = b.rescaled(L);
    Order o = order_min(ar.order(), br.order());
    std::optional<QSeries::Exp> bound;
    if (o) bound = key_bound(*o, L);
    auto ia = ar.terms().begin(), ea = ar.terms().end();
    auto ib = br.terms().begin(), eb = br.terms().end();
    while (ia != ea || ib != eb) {
        QSeries::Exp e;
        Rational ca(0), cb(0);
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            e = ia->first;
            ca = ia->second;
            ++ia;
        } else if (ia == ea || ib->first < ia->first) {
            e = ib->first;
            cb = ib->second;
            ++ib;
        } else {
            e = ia->first;
            ca = ia->second;
            cb = ib->second;
            ++ia;
            ++ib;
        }
        if (bound && e >= *bound) return std::nullopt;  // maps are sorted: nothing else below
        if (ca != cb) return std::make_tuple(make_frac(e, L), ca, cb);
    }
    return std::nullopt;
}

nlohmann::json to_json(const QSeries& a) {
    nlohmann::json j;
    j["lattice"] = a.lattice();
    j["order"] = a.order() ? rational_to_string(*a.order()) : "inf";
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [e, c] : a.terms())
        coeffs.push_back(nlohmann::json::array({e, rational_to_string(c)}));
    j["coeffs"] = std::move(coeffs);
    return j;
}

QSeries qseries_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("lattice") || !j.contains("order") || !j.contains("coeffs"))
        throw std::invalid_argument("qseries_from_json: expected {lattice, order, coeffs}");
    int lattice = j.at("lattice").get<int>();
    Order order;
    std::string os = j.at("order").get<std::string>();
    if (os != "inf") order = rational_from_string(os);
    QSeries out(lattice, order);
    for (const auto& entry : j.at("coeffs")) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument("qseries_from_json: coefficient entries must be [e, \"p/q\"]");
        out.add_term(entry.at(0).get<long long>(),
                     rational_from_string(entry.at(1).get<std::string>()));
    }
    return out;
}

std::string to_display_string(const QSeries& a) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : a.terms()) {
        Rational ex = make_frac(e, a.lattice());
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational ac = abs(c);
        bool unit_coeff = (ac == 1) && (e != 0);
        if (!unit_coeff) os << rational_to_string(ac);
        if (e != 0) {
            if (!unit_coeff) os << "*";
            os << "q";
            if (ex != 1) {
                os << "^";
                if (ex.get_den() == 1) os << rational_to_string(ex);
                else os << "(" << rational_to_string(ex) << ")";
            }
        }
    }
    if (first) os << "0";
    if (a.order()) os << " + O(q^" << rational_to_string(*a.order()) << ")";
    return os.str();
}

}  // namespace qeis
