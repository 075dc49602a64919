#pragma once
// Weight-graded monomial enumeration over a chosen set of series generators
// and an exact nullspace computation over the integers, used to search for
// algebraic relations among the generators.  A nonempty nullspace at q-order
// comfortably above the monomial count is a detected relation; an empty one
// is the reproducible bounded claim "no relation of this weight visible to
// this order".

#include <string>
#include <vector>

#include "qeis/eisenstein.hpp"
#include "qeis/qseries.hpp"

namespace qeis {

// A generator is one series family member, e.g. f_2 or G_4; weight = index.
struct Generator {
    char family;  // 'f' or 'G'
    int index;

    std::string name() const { return std::string(1, family) + std::to_string(index); }
    friend bool operator==(const Generator&, const Generator&) = default;
};

// The canonical generator order puts the f's (ascending index) before the
// G's (ascending index); monomial enumeration is deterministic with respect
// to it.
std::vector<Generator> default_generators(int max_f_index);

struct Monomial {
    // factors in canonical generator order, exponents positive
    std::vector<std::pair<Generator, int>> factors;

    int weight() const;
    int total_degree() const;
    std::string name() const;  // e.g. "f2^2*G4"
};

// All monomials of exact weight W in the given generators, ordered by total
// degree and then by lexicographically greatest exponent vector (so the
// single-generator monomials come first).
std::vector<Monomial> monomial_basis(int W, const std::vector<Generator>& generators);

QSeries evaluate_monomial(const Monomial& m, long long N, SeriesCache& cache);

struct RelationSearchResult {
    int weight = 0;
    long long order = 0;
    std::vector<std::string> monomials;
    // primitive integer relation vectors: v with sum_j v_j * monomial_j = 0
    std::vector<std::vector<Int>> nullspace;
};

// Evaluates every monomial of weight W to q-order N, clears denominators
// columnwise, and computes the exact right nullspace by fraction-free
// (Bareiss) elimination.  Requires N > monomial count so that a rank drop
// means something; violating that is an error, never a silent pass.
RelationSearchResult find_relations(int W, long long N,
                                    const std::vector<Generator>& generators,
                                    SeriesCache& cache);

nlohmann::json relations_to_json(const RelationSearchResult& r);

}  // namespace qeis
