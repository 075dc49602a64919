#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "qeis/relations.hpp"

using namespace qeis;

namespace {

int index_of(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    REQUIRE(it != names.end());
    return static_cast<int>(it - names.begin());
}

// the relation vector really annihilates the evaluated monomials
void check_annihilates(const RelationSearchResult& r, const std::vector<Generator>& gens,
                       SeriesCache& cache) {
    std::vector<Monomial> basis = monomial_basis(r.weight, gens);
    REQUIRE(basis.size() == r.monomials.size());
    for (const auto& v : r.nullspace) {
        QSeries sum(1, Rational(static_cast<long>(r.order)));
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            sum = series_add(sum, series_scale(evaluate_monomial(basis[j], r.order, cache),
                                               Rational(v[j])));
        }
        CHECK(sum.is_zero());
    }
}

}  // namespace

TEST_CASE("default generator family lists the f's before the classical G's") {
    auto gens = default_generators(12);
    REQUIRE(gens.size() == 9);
    CHECK(gens[0].name() == "f2");
    CHECK(gens[5].name() == "f12");
    CHECK(gens[6].name() == "G2");
    CHECK(gens[8].name() == "G6");
}

TEST_CASE("monomial counts per weight over the default generators") {
    auto gens = default_generators(12);
    const std::pair<int, size_t> expected[] = {{2, 2}, {4, 5}, {6, 10},
                                               {8, 19}, {10, 33}, {12, 57}};
    for (const auto& [w, count] : expected) CHECK(monomial_basis(w, gens).size() == count);
}

TEST_CASE("monomial order: total degree first, then greatest exponent vector") {
    auto basis = monomial_basis(4, default_generators(12));
    std::vector<std::string> names;
    for (const auto& m : basis) names.push_back(m.name());
    CHECK(names == std::vector<std::string>{"f4", "G4", "f2^2", "f2*G2", "G2^2"});
    for (const auto& m : basis) CHECK(m.weight() == 4);
    CHECK(basis[0].total_degree() == 1);
    CHECK(basis[2].total_degree() == 2);
}

TEST_CASE("weight must be even and at least 2") {
    auto gens = default_generators(12);
    CHECK_THROWS_AS(monomial_basis(3, gens), std::invalid_argument);
    CHECK_THROWS_AS(monomial_basis(0, gens), std::invalid_argument);
}

TEST_CASE("monomial evaluation multiplies the cached series") {
    SeriesCache cache;
    auto basis = monomial_basis(4, default_generators(12));
    // f2^2 sits at position 2 (checked above)
    QSeries direct = series_mul(cache.f(2, 10), cache.f(2, 10));
    CHECK(evaluate_monomial(basis[2], 10, cache) == direct);
}

TEST_CASE("no integer relation among the mixed family at weight 4") {
    SeriesCache cache;
    auto r = find_relations(4, 12, default_generators(12), cache);
    CHECK(r.weight == 4);
    CHECK(r.order == 12);
    CHECK(r.monomials.size() == 5);
    CHECK(r.nullspace.empty());
}

TEST_CASE("order must exceed the monomial count") {
    SeriesCache cache;
    auto gens = default_generators(12);
    size_t count = monomial_basis(8, gens).size();
    CHECK_THROWS_AS(find_relations(8, static_cast<long long>(count), gens, cache),
                    std::invalid_argument);
}

TEST_CASE("positive control: the weight-8 relation among redundant classical generators") {
    SeriesCache cache;
    std::vector<Generator> gens{{'G', 2}, {'G', 4}, {'G', 8}};
    auto r = find_relations(8, 14, gens, cache);
    REQUIRE(r.nullspace.size() == 1);
    const auto& v = r.nullspace.front();
    int i8 = index_of(r.monomials, "G8");
    int i44 = index_of(r.monomials, "G4^2");
    CHECK(v[static_cast<size_t>(i8)] == 1);
    CHECK(v[static_cast<size_t>(i44)] == -120);
    for (size_t j = 0; j < v.size(); ++j)
        if (j != static_cast<size_t>(i8) && j != static_cast<size_t>(i44)) CHECK(v[j] == 0);
    check_annihilates(r, gens, cache);
}

TEST_CASE("positive control: the weight-12 relation among redundant classical generators") {
    SeriesCache cache;
    std::vector<Generator> gens{{'G', 4}, {'G', 6}, {'G', 12}};
    auto r = find_relations(12, 14, gens, cache);
    REQUIRE(r.nullspace.size() == 1);
    const auto& v = r.nullspace.front();
    int i12 = index_of(r.monomials, "G12");
    int i66 = index_of(r.monomials, "G6^2");
    int i444 = index_of(r.monomials, "G4^3");
    CHECK(v[static_cast<size_t>(i12)] == 13);
    CHECK(v[static_cast<size_t>(i66)] == -12600);
    CHECK(v[static_cast<size_t>(i444)] == -1209600);
    check_annihilates(r, gens, cache);
}

TEST_CASE("detected relation vectors are primitive with a positive leading entry") {
    SeriesCache cache;
    std::vector<Generator> gens{{'G', 2}, {'G', 4}, {'G', 8}};
    auto r = find_relations(8, 14, gens, cache);
    REQUIRE(r.nullspace.size() == 1);
    const auto& v = r.nullspace.front();
    Int g(0);
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    CHECK(g == 1);
    for (const auto& x : v) {
        if (x == 0) continue;
        CHECK(x > 0);
        break;
    }
}

TEST_CASE("JSON report carries the basis labels and string-encoded vectors") {
    SeriesCache cache;
    std::vector<Generator> gens{{'G', 2}, {'G', 4}, {'G', 8}};
    auto r = find_relations(8, 14, gens, cache);
    nlohmann::json j = relations_to_json(r);
    CHECK(j["weight"] == 8);
    CHECK(j["order"] == 14);
    CHECK(j["monomials"].size() == r.monomials.size());
    REQUIRE(j["nullspace"].size() == 1);
    bool found120 = false;
    for (const auto& entry : j["nullspace"][0])
        if (entry.get<std::string>() == "-120") found120 = true;
    CHECK(found120);
}
