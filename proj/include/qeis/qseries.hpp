#pragma once
// Truncated formal power series in q over the exact rationals.
//
// A QSeries tracks coefficients of q^(e/d) for integer keys e on a fixed
// exponent lattice with denominator d (d = 1 for ordinary series, d = 24 for
// objects carrying a q^(1/24) prefactor).  The truncation order O is a
// first-class part of the value: exponents e/d < O are known exactly and
// everything at or beyond O is unknown.  O = nullopt means the series is
// exact (a finite q-polynomial with no unknown tail).  Binary operations
// propagate the tightest honest order, which is how silent precision loss is
// kept out of the calculus.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "json.hpp"
#include "qeis/arith.hpp"

namespace qeis {

using Order = std::optional<Rational>;  // nullopt = exact / unbounded

class QSeries {
  public:
    using Exp = long long;  // lattice key; true exponent is key / lattice

    // Zero series: exact by default, or unknown beyond `order`.
    explicit QSeries(int lattice = 1, Order order = std::nullopt);

    static QSeries constant(const Rational& c);
    // c * q^e with rational exponent; lattice is the exponent's denominator.
    static QSeries monomial(const Rational& c, const Rational& e);

    int lattice() const { return lattice_; }
    const Order& order() const { return order_; }
    const std::map<Exp, Rational>& terms() const { return coeffs_; }

    // Adds c * q^(e/lattice).  Terms at or beyond the truncation order are
    // unknown by definition, so adding one is a no-op.
    void add_term(Exp e, const Rational& c);

    // Coefficient at rational exponent e.  Throws std::domain_error when e
    // lies at or beyond the truncation order (the value is not known, and
    // pretending it is zero is exactly the bug this type exists to prevent).
    Rational coeff(const Rational& e) const;

    bool is_zero() const { return coeffs_.empty(); }

    // Smallest exponent with a nonzero coefficient; nullopt for the zero
    // series (valuation +infinity).
    std::optional<Rational> valuation() const;

    // Same series on a coarser-keyed lattice; new_lattice must be a multiple
    // of the current one.
    QSeries rescaled(int new_lattice) const;

    // Same series with the truncation order lowered to min(order, new_order).
    QSeries truncated(const Rational& new_order) const;

  private:
    int lattice_;
    Order order_;
    std::map<Exp, Rational> coeffs_;  // zero values never stored

    friend QSeries series_add(const QSeries&, const QSeries&);
    friend QSeries series_mul(const QSeries&, const QSeries&);
};

// --- order helpers -------------------------------------------------------

// min of two orders, with nullopt acting as +infinity.
Order order_min(const Order& a, const Order& b);

// Smallest integer key bound such that e < bound iff e/lattice < order.
// Callers must pass a finite order.
QSeries::Exp key_bound(const Rational& order, int lattice);

// --- ring operations -----------------------------------------------------

QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_sub(const QSeries& a, const QSeries& b);
QSeries series_neg(const QSeries& a);
QSeries series_scale(const QSeries& a, const Rational& s);

// Exact Cauchy product.  The result order is
//   min(O_a + val(b), O_b + val(a)),
// since the unknown tail of one factor first contaminates the product at its
// own order shifted by the other factor's valuation.
QSeries series_mul(const QSeries& a, const QSeries& b);

// Multiplicative inverse.  Requires a nonzero leading term.  For a series of
// valuation v and order O the result has valuation -v and order O - 2v.
// An exact input must be a single monomial (any other exact polynomial has an
// infinite inverse, which cannot be represented without a truncation order).
QSeries series_inverse(const QSeries& a);

// exp(a) = sum a^n / n!.  Requires zero constant term and no negative
// exponents; a nonzero exact input is rejected because the result would need
// an unbounded number of terms.  Computed by the first-order ODE recurrence
// (f' = a' f), which is quadratic in the number of tracked keys.
QSeries series_exp(const QSeries& a);

// log(a) for a with constant term exactly 1 and no negative exponents.
QSeries series_log(const QSeries& a);

// D = q d/dq: multiplies the coefficient of q^(e/d) by e/d.
QSeries q_derivative(const QSeries& a);

// (q)_infinity = prod_{n >= 1} (1 - q^n), truncated at `order` (>= 1).
QSeries euler_product(const Rational& order);

// q^(1/24) * (q)_infinity on the d = 24 lattice; order becomes order + 1/24.
QSeries eta_series(const Rational& order);

// lcm of coefficient denominators over exponents >= from_exponent (1 if none).
Int max_denominator(const QSeries& a, const Rational& from_exponent);

// --- comparison ----------------------------------------------------------

// Equality means agreement on every exponent below the shared truncation
// order (below both orders).  Two exact series must agree everywhere.
bool operator==(const QSeries& a, const QSeries& b);
inline bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

// First exponent below the shared order where the two series differ,
// together with both coefficient values; nullopt if they agree.
std::optional<std::tuple<Rational, Rational, Rational>> first_mismatch(const QSeries& a,
                                                                      const QSeries& b);

// --- serialization -------------------------------------------------------
// Schema: { "lattice": d, "order": "p/q" | "inf", "coeffs": [[e, "p/q"], ...] }
// with coefficients sorted by key and rationals as exact strings.  Bit-exact
// round-trip.

nlohmann::json to_json(const QSeries& a);
QSeries qseries_from_json(const nlohmann::json& j);

// Human-readable form like "-1/24 + q^2 + 3*q^3 (+ O(q^9))" for logs/tests.
std::string to_display_string(const QSeries& a);

}  // namespace qeis
