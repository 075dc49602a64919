#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qeis/qseries.hpp"

using namespace qeis;

namespace {

Rational rat(long long n) { return Rational(static_cast<long>(n)); }

QSeries from_coeffs(std::initializer_list<std::pair<long long, long long>> cs, long long order) {
    QSeries s(1, rat(order));
    for (const auto& [e, c] : cs) s.add_term(e, rat(c));
    return s;
}

// deterministic pseudo-random series for property tests
QSeries random_series(std::mt19937& rng, long long order, bool unit_constant = false) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    QSeries s(1, rat(order));
    if (unit_constant) s.add_term(0, Rational(1));
    for (long long e = unit_constant ? 1 : 0; e < order; ++e) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        s.add_term(e, c);
    }
    return s;
}

}  // namespace

TEST_CASE("constructor validates the lattice denominator") {
    CHECK_THROWS_AS(QSeries(0), std::invalid_argument);
    CHECK_THROWS_AS(QSeries(-3), std::invalid_argument);
    CHECK(QSeries(24).lattice() == 24);
}

TEST_CASE("constant and monomial builders") {
    QSeries c = QSeries::constant(Rational(5, 3));
    CHECK(c.lattice() == 1);
    CHECK(!c.order());  // exact
    CHECK(c.coeff(rat(0)) == Rational(5, 3));
    CHECK(c.coeff(rat(100)) == 0);  // exact series: every coefficient known

    QSeries m = QSeries::monomial(Rational(2), Rational(3, 2));
    CHECK(m.lattice() == 2);
    CHECK(m.coeff(Rational(3, 2)) == 2);
    CHECK(m.coeff(rat(1)) == 0);

    // zero coefficient collapses to the exact zero series
    QSeries z = QSeries::monomial(Rational(0), Rational(7));
    CHECK(z.is_zero());
    CHECK(!z.order());
}

TEST_CASE("coefficients at or beyond the truncation order are unknown, not zero") {
    QSeries s = from_coeffs({{0, 1}, {2, 3}}, 5);
    CHECK(s.coeff(rat(2)) == 3);
    CHECK(s.coeff(rat(4)) == 0);  // below order: known zero
    CHECK_THROWS_AS(s.coeff(rat(5)), std::domain_error);
    CHECK_THROWS_AS(s.coeff(rat(7)), std::domain_error);
    // off-lattice exponent below the order is a known zero
    CHECK(s.coeff(Rational(1, 2)) == 0);
}

TEST_CASE("adding a term at or beyond the order is a no-op") {
    QSeries s(1, rat(4));
    s.add_term(4, rat(9));
    s.add_term(100, rat(9));
    CHECK(s.is_zero());
    s.add_term(3, rat(2));
    s.add_term(3, rat(-2));  // cancels back to zero, no stored zero
    CHECK(s.is_zero());
}

TEST_CASE("valuation") {
    CHECK(!QSeries().valuation());
    CHECK(*from_coeffs({{2, 1}, {5, 4}}, 9).valuation() == 2);
    CHECK(*QSeries::monomial(Rational(1), Rational(1, 24)).valuation() == Rational(1, 24));
}

TEST_CASE("rescaling to a finer lattice preserves the series") {
    QSeries s = from_coeffs({{0, -1}, {3, 7}}, 6);
    QSeries r = s.rescaled(24);
    CHECK(r.lattice() == 24);
    CHECK(r == s);
    CHECK(r.coeff(rat(3)) == 7);
    QSeries fine = QSeries::monomial(Rational(1), Rational(1, 24));
    CHECK_THROWS_AS(fine.rescaled(36), std::invalid_argument);  // not a multiple of 24
}

TEST_CASE("truncation only ever lowers the order") {
    QSeries s = from_coeffs({{0, 1}, {4, 2}}, 5);
    CHECK(*s.truncated(rat(3)).order() == 3);
    CHECK(s.truncated(rat(3)).terms().count(4) == 0);
    CHECK(*s.truncated(rat(10)).order() == 5);  // cannot be raised
}

TEST_CASE("addition and subtraction propagate the minimum order") {
    QSeries a = from_coeffs({{0, 1}}, 3);
    QSeries b = from_coeffs({{1, 1}}, 5);
    QSeries s = series_add(a, b);
    CHECK(*s.order() == 3);
    CHECK(s.coeff(rat(0)) == 1);
    CHECK(s.coeff(rat(1)) == 1);
    QSeries d = series_sub(b, a);
    CHECK(*d.order() == 3);
    CHECK(d.coeff(rat(1)) == 1);
    // exact + truncated keeps the finite order
    QSeries e = series_add(QSeries::constant(2), a);
    CHECK(*e.order() == 3);
    CHECK(e.coeff(rat(0)) == 3);
}

TEST_CASE("product order is min(O_a + val(b), O_b + val(a))") {
    QSeries a(1, rat(4));
    a.add_term(1, rat(1));  // q + O(q^4), valuation 1
    QSeries b(1, rat(3));
    b.add_term(2, rat(1));  // q^2 + O(q^3), valuation 2
    QSeries p = series_mul(a, b);
    CHECK(*p.order() == 4);  // min(4+2, 3+1)
    CHECK(p.coeff(rat(3)) == 1);
    // multiplying by an exact monomial shifts the order by its exponent
    QSeries m = QSeries::monomial(Rational(1), Rational(2));
    CHECK(*series_mul(a, m).order() == 6);
}

TEST_CASE("multiplication on mixed lattices lands on the lcm lattice") {
    QSeries a = QSeries::monomial(Rational(2), Rational(1, 24));
    QSeries b = QSeries::monomial(Rational(3), Rational(1, 8));
    QSeries p = series_mul(a, b);
    CHECK(p.coeff(Rational(1, 6)) == 6);  // 1/24 + 3/24
    CHECK(!p.order());
}

TEST_CASE("equality compares below the shared order only") {
    QSeries a = from_coeffs({{0, 1}, {1, 1}}, 2);
    QSeries b = from_coeffs({{0, 1}, {1, 1}, {2, 5}}, 3);
    CHECK(a == b);  // they agree below q^2, the shared bound
    QSeries c = from_coeffs({{0, 1}, {1, 2}}, 2);
    CHECK(a != c);
    auto mm = first_mismatch(a, c);
    REQUIRE(mm);
    CHECK(std::get<0>(*mm) == 1);
    CHECK(std::get<1>(*mm) == 1);
    CHECK(std::get<2>(*mm) == 2);
    // two exact series must agree everywhere
    CHECK(QSeries::constant(1) != QSeries::constant(2));
    CHECK(QSeries() == QSeries(24));
}

TEST_CASE("inverse of a unit series is a two-sided inverse to the order") {
    QSeries a = from_coeffs({{0, 1}, {1, -1}}, 12);  // 1 - q
    QSeries inv = series_inverse(a);
    for (long long e = 0; e < 12; ++e) CHECK(inv.coeff(rat(e)) == 1);  // geometric series
    QSeries one = series_mul(a, inv);
    CHECK(one == QSeries::constant(1));
}

TEST_CASE("inverse factors out the valuation and pays 2v of order") {
    QSeries a(1, rat(7));
    a.add_term(2, rat(1));
    a.add_term(3, rat(1));  // q^2 + q^3 + O(q^7), valuation 2
    QSeries inv = series_inverse(a);
    CHECK(*inv.order() == 3);  // 7 - 2*2
    CHECK(*inv.valuation() == -2);
    CHECK(inv.coeff(rat(-2)) == 1);
    CHECK(inv.coeff(rat(-1)) == -1);
    CHECK(series_mul(a, inv) == QSeries::constant(1));
}

TEST_CASE("inverse of an exact input works only for monomials") {
    QSeries m = QSeries::monomial(Rational(2), Rational(2));
    QSeries inv = series_inverse(m);
    CHECK(!inv.order());
    CHECK(inv.coeff(rat(-2)) == Rational(1, 2));
    CHECK_THROWS_AS(series_inverse(QSeries()), std::invalid_argument);
    QSeries exact_poly = QSeries::constant(1);
    exact_poly.add_term(1, rat(-1));  // exact 1 - q has an infinite inverse
    CHECK_THROWS_AS(series_inverse(exact_poly), std::invalid_argument);
}

TEST_CASE("exponential matches the factorial series and rejects bad inputs") {
    QSeries a(1, rat(8));
    a.add_term(1, rat(1));  // q + O(q^8)
    QSeries e = series_exp(a);
    Rational inv_fact(1);
    CHECK(e.coeff(rat(0)) == 1);
    for (long long k = 1; k < 8; ++k) {
        inv_fact /= static_cast<long>(k);
        CHECK(e.coeff(rat(k)) == inv_fact);
    }
    // exact zero exponentiates to exact one
    QSeries one = series_exp(QSeries());
    CHECK(!one.order());
    CHECK(one.coeff(rat(0)) == 1);
    // zero-to-an-order exponentiates to one-to-that-order
    QSeries oz = series_exp(QSeries(1, rat(5)));
    CHECK(*oz.order() == 5);
    CHECK(oz.coeff(rat(0)) == 1);
    CHECK_THROWS_AS(series_exp(QSeries::constant(1)), std::invalid_argument);
    QSeries exact_q = QSeries::monomial(Rational(1), Rational(1));
    CHECK_THROWS_AS(series_exp(exact_q), std::invalid_argument);  // needs finite order
}

TEST_CASE("log inverts exp and demands a leading 1") {
    std::mt19937 rng(7101u);
    for (int trial = 0; trial < 5; ++trial) {
        QSeries a = random_series(rng, 10);
        QSeries a0 = series_sub(a, QSeries::constant(a.terms().count(0) ? a.coeff(rat(0))
                                                                        : Rational(0)));
        CHECK(series_log(series_exp(a0)) == a0);
        QSeries u = random_series(rng, 10, /*unit_constant=*/true);
        CHECK(series_exp(series_log(u)) == u);
    }
    CHECK_THROWS_AS(series_log(from_coeffs({{0, 2}}, 4)), std::invalid_argument);
    CHECK_THROWS_AS(series_log(QSeries()), std::invalid_argument);
    // log of exactly 1 (to an order) is zero to that order
    QSeries lg = series_log(from_coeffs({{0, 1}}, 6));
    CHECK(lg.is_zero());
    CHECK(*lg.order() == 6);
}

TEST_CASE("exp turns sums into products") {
    std::mt19937 rng(99173u);
    for (int trial = 0; trial < 5; ++trial) {
        QSeries a = random_series(rng, 9), b = random_series(rng, 9);
        QSeries za(1, rat(9)), zb(1, rat(9));
        for (const auto& [e, c] : a.terms())
            if (e > 0) za.add_term(e, c);
        for (const auto& [e, c] : b.terms())
            if (e > 0) zb.add_term(e, c);
        CHECK(series_exp(series_add(za, zb)) ==
              series_mul(series_exp(za), series_exp(zb)));
    }
}

TEST_CASE("ring laws hold exactly on seeded random series") {
    std::mt19937 rng(5232025u);
    for (int trial = 0; trial < 5; ++trial) {
        QSeries a = random_series(rng, 8), b = random_series(rng, 8), c = random_series(rng, 8);
        CHECK(series_add(a, b) == series_add(b, a));
        CHECK(series_mul(a, b) == series_mul(b, a));
        CHECK(series_mul(a, series_add(b, c)) ==
              series_add(series_mul(a, b), series_mul(a, c)));
        CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
        CHECK(series_sub(a, a).is_zero());
    }
}

TEST_CASE("q d/dq scales each coefficient by its exponent and obeys the Leibniz rule") {
    QSeries s = from_coeffs({{0, 5}, {3, 2}}, 7);
    QSeries d = q_derivative(s);
    CHECK(d.coeff(rat(0)) == 0);
    CHECK(d.coeff(rat(3)) == 6);
    CHECK(*d.order() == 7);
    // fractional lattice: D(q^(1/24)) = (1/24) q^(1/24)
    QSeries m = QSeries::monomial(Rational(3), Rational(1, 24));
    CHECK(q_derivative(m).coeff(Rational(1, 24)) == Rational(1, 8));
    std::mt19937 rng(321u);
    for (int trial = 0; trial < 5; ++trial) {
        QSeries a = random_series(rng, 9), b = random_series(rng, 9);
        CHECK(q_derivative(series_mul(a, b)) ==
              series_add(series_mul(q_derivative(a), b), series_mul(a, q_derivative(b))));
    }
}

TEST_CASE("partition-count generating function from the inverted product") {
    QSeries ep = euler_product(rat(8));
    // 1 - q - q^2 + q^5 + q^7 + O(q^8)
    CHECK(ep.coeff(rat(0)) == 1);
    CHECK(ep.coeff(rat(1)) == -1);
    CHECK(ep.coeff(rat(2)) == -1);
    CHECK(ep.coeff(rat(3)) == 0);
    CHECK(ep.coeff(rat(4)) == 0);
    CHECK(ep.coeff(rat(5)) == 1);
    CHECK(ep.coeff(rat(6)) == 0);
    CHECK(ep.coeff(rat(7)) == 1);
    const long long counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    QSeries pgf = series_inverse(euler_product(rat(31)));
    for (long long n = 0; n <= 12; ++n) CHECK(pgf.coeff(rat(n)) == rat(counts[n]));
    CHECK(pgf.coeff(rat(30)) == 5604);
    CHECK_THROWS_AS(euler_product(rat(0)), std::invalid_argument);
}

TEST_CASE("eta-style prefactor lives on the 24th-exponent lattice") {
    QSeries eta = eta_series(rat(10));
    CHECK(eta.lattice() == 24);
    CHECK(*eta.order() == rat(10) + Rational(1, 24));
    CHECK(eta.coeff(Rational(1, 24)) == 1);
    CHECK(eta.coeff(Rational(25, 24)) == -1);   // exponent 1 + 1/24
    CHECK(eta.coeff(Rational(49, 24)) == -1);   // exponent 2 + 1/24
    CHECK(eta.coeff(Rational(121, 24)) == 1);   // exponent 5 + 1/24
    CHECK(eta.coeff(Rational(169, 24)) == 1);   // exponent 7 + 1/24
    for (const auto& [e, c] : eta.terms()) CHECK(e % 24 == 1);
}

TEST_CASE("denominator lcm can skip the constant term") {
    QSeries s = from_coeffs({{2, 1}, {3, 5}}, 6);
    s.add_term(0, Rational(-1, 24));
    CHECK(max_denominator(s, rat(0)) == 24);
    CHECK(max_denominator(s, rat(1)) == 1);
    QSeries t = from_coeffs({}, 6);
    t.add_term(1, Rational(1, 6));
    t.add_term(2, Rational(1, 4));
    CHECK(max_denominator(t, rat(1)) == 12);
    CHECK(max_denominator(QSeries(), rat(0)) == 1);
}

TEST_CASE("JSON serialization round-trips bit-exactly") {
    QSeries s(24, Rational(121, 24));
    s.add_term(1, Rational(1));
    s.add_term(25, Rational(-7, 3));
    nlohmann::json j = to_json(s);
    CHECK(j["lattice"] == 24);
    CHECK(j["order"] == "121/24");
    QSeries back = qseries_from_json(j);
    CHECK(back.lattice() == 24);
    CHECK(*back.order() == Rational(121, 24));
    CHECK(back.terms() == s.terms());

    QSeries exact = QSeries::constant(Rational(-5, 7));
    nlohmann::json je = to_json(exact);
    CHECK(je["order"] == "inf");
    CHECK(!qseries_from_json(je).order());
    CHECK(qseries_from_json(je) == exact);

    CHECK_THROWS_AS(qseries_from_json(nlohmann::json::array()), std::invalid_argument);
    CHECK_THROWS_AS(qseries_from_json(nlohmann::json{{"lattice", 1}}), std::invalid_argument);
}

TEST_CASE("display form") {
    QSeries s(1, rat(9));
    s.add_term(0, Rational(-1, 24));
    s.add_term(2, rat(1));
    s.add_term(3, rat(3));
    CHECK(to_display_string(s) == "-1/24 + q^2 + 3*q^3 + O(q^9)");
    CHECK(to_display_string(QSeries()) == "0");
    CHECK(to_display_string(QSeries(1, rat(4))) == "0 + O(q^4)");
    CHECK(to_display_string(QSeries::monomial(Rational(1), Rational(1, 24))) == "q^(1/24)");
}
