#include "qeis/relations.hpp"

#include <algorithm>
#include <stdexcept>

namespace qeis {

std::vector<Generator> default_generators(int max_f_index) {
    std::vector<Generator> g;
    for (int k = 2; k <= max_f_index; k += 2) g.push_back({'f', k});
    for (int k = 2; k <= 6; k += 2) g.push_back({'G', k});
    return g;
}

int Monomial::weight() const {
    int w = 0;
    for (const auto& [gen, e] : factors) w += gen.index * e;
    return w;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [gen, e] : factors) d += e;
    return d;
}

std::string Monomial::name() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [gen, e] : factors) {
        if (!s.empty()) s += "*";
        s += gen.name();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

namespace {

void enumerate_monomials(const std::vector<Generator>& gens, size_t i, int remaining,
                         std::vector<std::pair<Generator, int>>& current,
                         std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(Monomial{current});
        return;
    }
    if (i == gens.size()) return;
    int w = gens[i].index;
    for (int e = remaining / w; e >= 0; --e) {
        if (e > 0) current.emplace_back(gens[i], e);
        enumerate_monomials(gens, i + 1, remaining - e * w, current, out);
        if (e > 0) current.pop_back();
    }
    // exponent descends, so within equal total degree the exponent vector is
    // lexicographically greatest first; the final degree sort is stable
}

}  // namespace

std::vector<Monomial> monomial_basis(int W, const std::vector<Generator>& generators) {
    if (W < 2 || W % 2 != 0)
        throw std::invalid_argument("monomial_basis: weight must be even and >= 2");
    for (const auto& g : generators)
        if ((g.family != 'f' && g.family != 'G') || g.index < 2 || g.index % 2 != 0)
            throw std::invalid_argument("monomial_basis: invalid generator " + g.name());
    std::vector<Monomial> out;
    std::vector<std::pair<Generator, int>> current;
    enumerate_monomials(generators, 0, W, current, out);
    std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return a.total_degree() < b.total_degree();
    });
    return out;
}

QSeries evaluate_monomial(const Monomial& m, long long N, SeriesCache& cache) {
    QSeries acc = QSeries::constant(1).truncated(Rational(static_cast<long>(N)));
    for (const auto& [gen, e] : m.factors) {
        QSeries base = gen.family == 'f' ? cache.f(gen.index, N) : cache.G(gen.index, N);
        for (int i = 0; i < e; ++i) acc = series_mul(acc, base);
    }
    return acc;
}

RelationSearchResult find_relations(int W, long long N,
                                    const std::vector<Generator>& generators,
                                    SeriesCache& cache) {
    std::vector<Monomial> basis = monomial_basis(W, generators);
    size_t cols = basis.size();
    if (N <= static_cast<long long>(cols))
        throw std::invalid_argument(
            "find_relations: q-order " + std::to_string(N) + " must exceed the monomial count " +
            std::to_string(cols) + "; a rank drop at lower order proves nothing");
    size_t rows = static_cast<size_t>(N);

    // evaluate and clear denominators columnwise; remember the scaling so the
    // reported relation applies to the original monomials
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols, Int(0)));
    std::vector<Int> col_scale(cols, Int(1));
    for (size_t j = 0; j < cols; ++j) {
        QSeries s = evaluate_monomial(basis[j], N, cache);
        Int scale = max_denominator(s, Rational(0));
        col_scale[j] = scale;
        for (const auto& [e, c] : s.terms()) {
            if (e < 0 || e >= static_cast<long long>(rows)) continue;
            Rational v = c * scale;
            v.canonicalize();
            m[static_cast<size_t>(e)][j] = v.get_num();  // denominator is 1 by construction
        }
    }

    // fraction-free row echelon (Bareiss)
    std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
    std::vector<size_t> free_cols;
    Int prev(1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot_row = r;
        while (pivot_row < rows && m[pivot_row][c] == 0) ++pivot_row;
        if (pivot_row == rows) {
            free_cols.push_back(c);
            continue;
        }
        std::swap(m[r], m[pivot_row]);
        for (size_t i = r + 1; i < rows; ++i) {
            // applied even when m[i][c] == 0: the entry rescaling by
            // pivot/prev is part of the fraction-free invariant
            for (size_t c2 = c + 1; c2 < cols; ++c2) {
                Int t = m[i][c2] * m[r][c] - m[i][c] * m[r][c2];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][c2] = std::move(t);
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.emplace_back(r, c);
        ++r;
    }
    RelationSearchResult result;
    result.weight = W;
    result.order = N;
    for (const auto& b : basis) result.monomials.push_back(b.name());

    for (size_t fc : free_cols) {
        // back-substitute over rationals, then scale to a primitive integer
        // vector and undo the column scaling
        std::vector<Rational> x(cols, Rational(0));
        x[fc] = 1;
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto [pr, pc] = *it;
            Rational s(0);
            for (size_t c2 = pc + 1; c2 < cols; ++c2) {
                if (x[c2] == 0 || m[pr][c2] == 0) continue;
                Rational t = Rational(m[pr][c2]) * x[c2];
                s += t;
            }
            x[pc] = -s / Rational(m[pr][pc]);
        }
        // relation on original monomials: multiply back by the column scales
        for (size_t j = 0; j < cols; ++j) x[j] *= col_scale[j];
        Int denom_lcm(1);
        for (const auto& v : x) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
                                        v.get_den_mpz_t());
        std::vector<Int> vi(cols);
        Int content(0);
        for (size_t j = 0; j < cols; ++j) {
            Rational scaled = x[j] * denom_lcm;
            scaled.canonicalize();
            vi[j] = scaled.get_num();
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), vi[j].get_mpz_t());
        }
        if (content > 1)
            for (auto& v : vi) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
        // sign convention: first nonzero entry positive
        for (const auto& v : vi) {
            if (v == 0) continue;
            if (v < 0)
                for (auto& w : vi) w = -w;
            break;
        }
        result.nullspace.push_back(std::move(vi));
    }
    return result;
}

nlohmann::json relations_to_json(const RelationSearchResult& r) {
    nlohmann::json j;
    j["weight"] = r.weight;
    j["order"] = r.order;
    j["monomials"] = r.monomials;
    nlohmann::json ns = nlohmann::json::array();
    for (const auto& vec : r.nullspace) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : vec) row.push_back(v.get_str());
        ns.push_back(std::move(row));
    }
    j["nullspace"] = std::move(ns);
    return j;
}

}  // namespace qeis
