// qeis: exact q-series calculator and identity verifier.
//
// Subcommands:
//   coeffs     print the coefficients of one named series
//   verify     run named identity checks (or the whole catalog) in parallel
//   relations  search for integer relations among weight-graded monomials
//   table      rank/crank count tables N(m,n) / M(m,n)
//
// Exit codes: 0 success / all requested checks pass, 1 a check failed,
// 2 usage error (unknown flag, malformed value, parameter out of bounds).
// All numeric output is exact ("p/q" strings); nothing is ever rounded.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qeis/eisenstein.hpp"
#include "qeis/relations.hpp"
#include "qeis/verify.hpp"

using namespace qeis;

namespace {

// default q-order for coeffs, overridable via environment for whole sessions
long long default_order() {
    const char* s = std::getenv("QEIS_DEFAULT_ORDER");
    if (!s || !*s) return 16;
    std::string v(s);
    try {
        size_t pos = 0;
        long long n = std::stoll(v, &pos);
        if (pos != v.size() || n < 1) throw std::invalid_argument(v);
        return n;
    } catch (...) {
        throw std::invalid_argument("QEIS_DEFAULT_ORDER must be a positive integer, got \"" +
                                    v + "\"");
    }
}

int emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(output_path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << output_path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

std::string exponent_string(const QSeries& s, QSeries::Exp key) {
    Rational e(static_cast<long>(key), static_cast<long>(s.lattice()));
    e.canonicalize();
    return rational_to_string(e);
}

std::string series_csv(const QSeries& s) {
    std::ostringstream os;
    for (const auto& [e, c] : s.terms())
        os << exponent_string(s, e) << "," << rational_to_string(c) << "\n";
    return os.str();
}

std::string series_text(const QSeries& s) {
    std::ostringstream os;
    os << to_display_string(s) << "\n";
    if (!s.terms().empty()) {
        size_t width = std::string("exponent").size();
        for (const auto& [e, c] : s.terms())
            width = std::max(width, exponent_string(s, e).size());
        os << "\n" << std::left << std::setw(static_cast<int>(width)) << "exponent"
           << "  coefficient\n";
        for (const auto& [e, c] : s.terms())
            os << std::left << std::setw(static_cast<int>(width)) << exponent_string(s, e)
               << "  " << rational_to_string(c) << "\n";
    }
    if (s.order())
        os << "\ntruncation order: " << rational_to_string(*s.order()) << "\n";
    else
        os << "\nexact (no truncation)\n";
    return os.str();
}

// "KIND:index:exponent:delta", e.g. "G:4:5:1" adds q^5 to G_4.
struct FaultSpec {
    char kind;
    int index;
    Rational exponent;
    Rational delta;
};

FaultSpec parse_fault(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw std::invalid_argument("--inject-fault expects KIND:index:exponent:delta, got \"" +
                                    spec + "\"");
    const std::string kinds = "GgfRC";
    if (parts[0].size() != 1 || kinds.find(parts[0][0]) == std::string::npos)
        throw std::invalid_argument("--inject-fault kind must be one of G,g,f,R,C, got \"" +
                                    parts[0] + "\"");
    FaultSpec f;
    f.kind = parts[0][0];
    try {
        size_t pos = 0;
        f.index = std::stoi(parts[1], &pos);
        if (pos != parts[1].size() || f.index < 0) throw std::invalid_argument(parts[1]);
    } catch (...) {
        throw std::invalid_argument("--inject-fault index must be a nonnegative integer, got \"" +
                                    parts[1] + "\"");
    }
    f.exponent = rational_from_string(parts[2]);
    f.delta = rational_from_string(parts[3]);
    if (f.delta == 0)
        throw std::invalid_argument("--inject-fault delta must be nonzero");
    return f;
}

void install_fault(SeriesCache& cache, const FaultSpec& f, long long order) {
    QSeries base;
    switch (f.kind) {
        case 'G': base = cache.G(f.index, order); break;
        case 'g': base = cache.g(f.index, order); break;
        case 'f': base = cache.f(f.index, order); break;
        case 'R': base = cache.R(f.index, order); break;
        case 'C': base = cache.C(f.index, order); break;
    }
    QSeries perturbed = series_add(base, QSeries::monomial(f.delta, f.exponent));
    cache.set_override(f.kind, f.index, perturbed);
}

int run_coeffs(const std::string& object, int k, int a, int b, long long order,
               const std::string& format, const std::string& output_path) {
    SeriesCache cache;
    QSeries s;
    std::string label = object + "_" + std::to_string(k);
    if (object == "f") {
        s = cache.f(k, order);
    } else if (object == "g") {
        s = cache.g(k, order);
    } else if (object == "G") {
        s = cache.G(k, order);
    } else if (object == "R") {
        s = cache.R(k, order);
    } else if (object == "C") {
        s = crank_moment(k, order, cache);
    } else if (object == "g_general") {
        s = g_general(a, b, k, order);
        label = "g_general(a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                ", l=" + std::to_string(k) + ")";
    }
    // odd-index members of these families vanish identically by convention
    if (k % 2 == 1 && (object == "f" || object == "g" || object == "G" || object == "R"))
        std::cerr << "note: " << label
                  << " is the zero series (odd index); emitting it anyway\n";
    if (format == "json") return emit(to_json(s).dump(2) + "\n", output_path);
    if (format == "csv") return emit(series_csv(s), output_path);
    return emit(label + " = " + series_text(s), output_path);
}

int run_verify(std::vector<std::string> names, bool all, const CheckOptions& options,
               const std::string& format, const std::vector<std::string>& faults,
               bool sequential, const std::string& output_path) {
    // checks named explicitly gate the exit code even when flagged non-gating
    // in the catalog; under --all the catalog's own gating flags decide
    bool strict = !names.empty();
    if (all || names.empty()) names = check_catalog();
    for (const auto& n : names)
        if (!is_known_check(n)) throw std::invalid_argument("unknown check name: " + n);
    SeriesCache cache;
    if (!faults.empty()) {
        long long fault_order = std::max<long long>(44, options.order.value_or(0) + 4);
        for (const auto& spec : faults) install_fault(cache, parse_fault(spec), fault_order);
    }
    std::vector<CheckReport> reports = run_checks(names, cache, options, !sequential);
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) j.push_back(report_to_json(r));
        os << j.dump(2) << "\n";
    } else {
        int passed = 0;
        for (const auto& r : reports) {
            os << report_to_text(r) << "\n";
            if (r.pass) ++passed;
        }
        os << passed << "/" << reports.size() << " checks passed\n";
    }
    int rc = emit(os.str(), output_path);
    if (rc != 0) return rc;
    for (const auto& r : reports)
        if (!r.pass && (strict || r.gating)) return 1;
    return 0;
}

int run_relations(int weight, long long order, int max_f_index, const std::string& format,
                  const std::string& output_path) {
    SeriesCache cache;
    std::vector<Generator> gens = default_generators(max_f_index);
    if (order < 0)
        order = static_cast<long long>(monomial_basis(weight, gens).size()) + 5;
    RelationSearchResult result = find_relations(weight, order, gens, cache);
    std::ostringstream os;
    if (format == "text") {
        os << "weight " << result.weight << ", q-order " << result.order << ", "
           << result.monomials.size() << " monomials\n";
        for (const auto& m : result.monomials) os << "  " << m << "\n";
        if (result.nullspace.empty()) {
            os << "no relation detectable at this order\n";
        } else {
            os << result.nullspace.size() << " relation(s):\n";
            for (const auto& v : result.nullspace) {
                os << " ";
                for (size_t i = 0; i < v.size(); ++i) os << " " << v[i].get_str();
                os << "\n";
            }
        }
    } else {
        os << relations_to_json(result).dump(2) << "\n";
    }
    return emit(os.str(), output_path);
}

int run_table(const std::string& object, int max_n, const std::string& format,
              const std::string& output_path) {
    // rows (n, m, count): N(m,n) from enumeration, M(m,n) from the generating
    // function (n = 1 anomaly included)
    std::vector<std::tuple<int, long long, std::string>> rows;
    if (object == "rank") {
        for (int n = 0; n <= max_n; ++n)
            for (const auto& [m, count] : rank_counts(n))
                rows.emplace_back(n, m, count.get_str());
    } else {
        LaurentQ gf = crank_counts_gf(static_cast<long long>(max_n) + 1);
        for (int n = 0; n <= max_n; ++n)
            for (const auto& [doubled, c] : gf.per_power[static_cast<size_t>(n)])
                rows.emplace_back(n, doubled / 2, rational_to_string(c));
    }
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j;
        j["object"] = object;
        j["max_n"] = max_n;
        j["rows"] = nlohmann::json::array();
        for (const auto& [n, m, c] : rows) j["rows"].push_back({n, m, c});
        os << j.dump(2) << "\n";
    } else if (format == "text") {
        os << std::left << std::setw(6) << "n" << std::setw(6) << "m" << "count\n";
        for (const auto& [n, m, c] : rows)
            os << std::left << std::setw(6) << n << std::setw(6) << m << c << "\n";
    } else {
        for (const auto& [n, m, c] : rows) os << n << "," << m << "," << c << "\n";
    }
    return emit(os.str(), output_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qeis: exact q-series families, identity verification, relation search"};
    app.require_subcommand(1);

    // --- coeffs ---
    auto* coeffs = app.add_subcommand("coeffs", "print the coefficients of one named series");
    std::string co_object, co_format = "text", co_output;
    int co_k = 0, co_a = 3, co_b = 2;
    long long co_order = -1;
    coeffs->add_option("--object", co_object, "series family: f, g, g_general, G, R, C")
        ->required()
        ->check(CLI::IsMember({"f", "g", "g_general", "G", "R", "C"}));
    coeffs->add_option("--k", co_k, "index within the family")->required();
    coeffs->add_option("--a", co_a, "first parameter for g_general (default 3)");
    coeffs->add_option("--b", co_b, "second parameter for g_general (default 2)");
    auto* co_order_opt =
        coeffs->add_option("--order", co_order, "q-truncation order (default 16, or "
                                                "QEIS_DEFAULT_ORDER)");
    coeffs->add_option("--format", co_format, "json, csv or text (default text)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    coeffs->add_option("--output", co_output, "write to this file instead of stdout");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "run identity checks from the catalog");
    std::vector<std::string> ve_checks, ve_faults;
    bool ve_all = false, ve_sequential = false;
    long long ve_order = -1;
    int ve_max_weight = -1;
    std::string ve_format = "text", ve_output;
    verify->add_option("--check", ve_checks, "check name (repeatable); see --list");
    verify->add_flag("--all", ve_all, "run the whole catalog");
    bool ve_list = false;
    verify->add_flag("--list", ve_list, "print the catalog and exit");
    auto* ve_order_opt =
        verify->add_option("--order", ve_order, "override each check's default q-order");
    auto* ve_mw_opt = verify->add_option("--max-weight", ve_max_weight,
                                         "override each check's default weight/degree bound");
    verify->add_option("--format", ve_format, "json or text (default text)")
        ->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--inject-fault", ve_faults,
                       "perturb one series coefficient: KIND:index:exponent:delta "
                       "(e.g. G:4:5:1); repeatable");
    verify->add_flag("--sequential", ve_sequential, "run checks one at a time");
    verify->add_option("--output", ve_output, "write to this file instead of stdout");

    // --- relations ---
    auto* relations = app.add_subcommand("relations",
                                         "search for integer relations among weight-graded "
                                         "monomials in the f and G generators");
    int re_weight = 0, re_max_f = 12;
    long long re_order = -1;
    std::string re_format = "json", re_output;
    relations->add_option("--weight", re_weight, "total weight of the monomials")
        ->required()
        ->check(CLI::PositiveNumber);
    relations->add_option("--order", re_order,
                          "q-order for the coefficient matrix (default: monomial count + 5)");
    relations->add_option("--max-f-index", re_max_f,
                          "largest f index among the generators (default 12)");
    relations->add_option("--format", re_format, "json or text (default json)")
        ->check(CLI::IsMember({"json", "text"}));
    relations->add_option("--output", re_output, "write to this file instead of stdout");

    // --- table ---
    auto* table = app.add_subcommand("table", "rank/crank count tables as (n, m, count) rows");
    std::string ta_object, ta_format = "csv", ta_output;
    int ta_max_n = 20;
    table->add_option("--object", ta_object, "rank or crank")
        ->required()
        ->check(CLI::IsMember({"rank", "crank"}));
    table->add_option("--max-n", ta_max_n, "largest n (default 20)")
        ->check(CLI::NonNegativeNumber);
    table->add_option("--format", ta_format, "csv, json or text (default csv)")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    table->add_option("--output", ta_output, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (coeffs->parsed()) {
            if (co_order_opt->count() == 0) co_order = default_order();
            if (co_order < 1) throw std::invalid_argument("--order must be >= 1");
            if (co_k < 0) throw std::invalid_argument("--k must be >= 0");
            return run_coeffs(co_object, co_k, co_a, co_b, co_order, co_format, co_output);
        }
        if (verify->parsed()) {
            if (ve_list) {
                for (const auto& n : check_catalog())
                    std::cout << n << (check_is_gating(n) ? "" : " [non-gating]") << "\n";
                return 0;
            }
            if (!ve_all && ve_checks.empty())
                throw std::invalid_argument("verify needs --check NAME or --all");
            CheckOptions options;
            if (ve_order_opt->count()) {
                if (ve_order < 1) throw std::invalid_argument("--order must be >= 1");
                options.order = ve_order;
            }
            if (ve_mw_opt->count()) {
                if (ve_max_weight < 1)
                    throw std::invalid_argument("--max-weight must be >= 1");
                options.max_weight = ve_max_weight;
            }
            return run_verify(ve_checks, ve_all, options, ve_format, ve_faults, ve_sequential,
                              ve_output);
        }
        if (relations->parsed()) {
            if (re_max_f < 2) throw std::invalid_argument("--max-f-index must be >= 2");
            return run_relations(re_weight, re_order, re_max_f, re_format, re_output);
        }
        if (table->parsed()) return run_table(ta_object, ta_max_n, ta_format, ta_output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
