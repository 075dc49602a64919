#pragma once
// Polynomials of bounded degree in the formal variable w with QSeries
// coefficients.  w stands for 2*pi*i*z, so every bivariate identity that
// classically involves pi, i, or zeta = e^(2*pi*i*z) becomes an identity
// between rational q-series, one per w-degree.  The degree bound plays the
// same role as the q-truncation order: degrees <= Z are tracked, higher
// degrees are unknown.

#include <optional>
#include <tuple>
#include <vector>

#include "qeis/qseries.hpp"

namespace qeis {

class WSeries {
  public:
    // Zero series of the given degree bound; coefficients carry q_order.
    static WSeries zero(int degree_bound, const Order& q_order = std::nullopt);

    // Takes ownership of coefficients c_0..c_Z (degree bound = size - 1) and
    // normalizes them to a common lattice and the minimum q-order.
    explicit WSeries(std::vector<QSeries> coeffs);

    int degree_bound() const { return static_cast<int>(coeffs_.size()) - 1; }
    const QSeries& coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
    const Order& q_order() const { return q_order_; }

  private:
    std::vector<QSeries> coeffs_;
    Order q_order_;
};

WSeries w_add(const WSeries& a, const WSeries& b);
WSeries w_sub(const WSeries& a, const WSeries& b);
WSeries w_scale(const WSeries& a, const Rational& s);

// Multiply every w-coefficient by one q-series (i.e. by a degree-0 factor).
WSeries w_scale_q(const WSeries& a, const QSeries& s);

// Graded Cauchy product; result degree bound = min of the operands' bounds
// (degree k of the product only needs tracked coefficients when k is within
// both bounds).
WSeries w_mul(const WSeries& a, const WSeries& b);

// Multiplication by w^k: coefficients shift up, degree bound grows by k
// (the shifted-in low degrees are exactly zero).
WSeries w_shift(const WSeries& a, int k);

// exp in w.  The w^0 coefficient must have zero q-constant term (or be zero);
// the rest of the input is nilpotent to the degree bound, so the sum is
// finite: exp(c_0) * sum_{n<=Z} (a - c_0)^n / n!.
WSeries w_exp(const WSeries& a);

// log in w.  The w^0 coefficient must be the constant series 1; computes
// sum_{1<=n<=Z} (-1)^(n+1) (a-1)^n / n.
WSeries w_log(const WSeries& a);

// d/dw: coefficient of w^k becomes (k+1) * c_{k+1}; degree bound drops by 1.
WSeries w_derivative(const WSeries& a);

// q d/dq applied to every w-coefficient.
WSeries w_q_derivative(const WSeries& a);

// sinh(w/2)/(w/2) = sum_j (w/2)^(2j) / (2j+1)!, an exact even w-polynomial
// with rational constant coefficients and no q-dependence.
WSeries sinh_half_kernel(int degree_bound);

// Multiplicative inverse of the kernel to the given degree bound.
WSeries sinh_half_kernel_reciprocal(int degree_bound);

// First (w-degree, q-exponent, coeff-in-a, coeff-in-b) where the two series
// disagree below the shared degree bound and q-order; nullopt if equal.
std::optional<std::tuple<int, Rational, Rational, Rational>> first_mismatch_w(const WSeries& a,
                                                                             const WSeries& b);

bool operator==(const WSeries& a, const WSeries& b);
inline bool operator!=(const WSeries& a, const WSeries& b) { return !(a == b); }

}  // namespace qeis
