// Command-line surface for the Bulgarian solitaire toolkit: orbit
// decompositions, level statistics, limiting generating functions, and the
// closed-form regression suite.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsol/errors.hpp"
#include "bsol/forest.hpp"
#include "bsol/gf.hpp"
#include "bsol/orbit.hpp"

using json = nlohmann::ordered_json;
using namespace bsol;

namespace {

constexpr long long kDefaultMaxNodes = 50'000'000;

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2, kResourceGuard = 3 };

struct Options {
    std::string command;
    std::optional<std::string> necklace;
    std::optional<long long> n;
    std::optional<int> k;
    std::optional<int> k_max;
    std::optional<int> depth;
    std::string output = "text";
    std::optional<std::string> out_path;
    std::optional<std::string> dot_path;
    long long max_nodes = kDefaultMaxNodes;
    bool members = false;
};

json necklace_json(const Necklace& p) {
    return json{{"word", p.to_string()}, {"p", p.length()}, {"b", p.ones()}};
}

json poly_json(const std::vector<long long>& coeffs) { return json(coeffs); }

json bigint_array(const std::vector<BigInt>& coeffs) {
    json a = json::array();
    for (const auto& c : coeffs) {
        if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
            a.push_back(static_cast<long long>(c));
        else
            a.push_back(c.str());
    }
    return a;
}

json gf_json(const RationalGF& g) {
    return json{{"num", bigint_array(g.num.coeffs())},
                {"den", bigint_array(g.den.coeffs())},
                {"num_text", g.num.to_string()},
                {"den_text", g.den.to_string()},
                {"num_degree", g.num.degree()},
                {"den_degree", g.den.degree()}};
}

std::string poly_text_ascending(const std::vector<long long>& coeffs) {
    std::vector<BigInt> big(coeffs.begin(), coeffs.end());
    return IntPolynomial(std::move(big)).to_string(true);
}

Necklace parse_necklace_arg(const Options& opt) {
    if (!opt.necklace) throw CLI::ValidationError("--necklace is required for this command");
    return Necklace::parse(*opt.necklace);
}

// W-family inputs normalize to the single white bead; forest commands accept
// W, BW, and primitive necklaces of length >= 3 only.
Necklace forest_necklace(const Necklace& p) {
    if (p.all_white()) return Necklace::parse("W");
    if (p.word() == std::vector<uint8_t>{0, 1} || (is_primitive(p) && p.length() >= 3)) return p;
    throw CLI::ValidationError("necklace must be W, BW, or primitive of length >= 3 (got " +
                               p.to_string() + ")");
}

struct Report {
    json body;       // deterministic part
    bool pass = true;
    std::string text;
    std::string csv;
};

Report cmd_orbits(const Options& opt) {
    if (!opt.n || *opt.n < 1) throw CLI::ValidationError("orbits requires --n >= 1");
    auto orbits = decompose(*opt.n, opt.max_nodes);
    long long total = 0;
    json rows = json::array();
    std::ostringstream text, csv;
    csv << "necklace,n,size,cycle_length,histogram\n";
    text << "orbits of n = " << *opt.n << "\n";
    for (const auto& o : orbits) {
        total += o.size();
        json row{{"necklace", necklace_json(o.necklace)},
                 {"n", o.n},
                 {"size", o.size()},
                 {"cycle_length", o.cycle_length()},
                 {"histogram", o.histogram}};
        if (opt.members) {
            json members = json::array();
            for (const auto& [part, level] : o.levels)
                members.push_back(json{{"partition", part.to_string()}, {"level", level}});
            row["members"] = std::move(members);
        }
        rows.push_back(std::move(row));
        text << "  " << o.necklace.to_string() << ": size " << o.size() << ", cycle "
             << o.cycle_length() << ", histogram [";
        for (size_t i = 0; i < o.histogram.size(); ++i) text << (i ? "," : "") << o.histogram[i];
        text << "]\n";
        csv << o.necklace.to_string() << ',' << o.n << ',' << o.size() << ',' << o.cycle_length()
            << ',';
        for (size_t i = 0; i < o.histogram.size(); ++i) csv << (i ? "|" : "") << o.histogram[i];
        csv << "\n";
        if (opt.members)
            for (const auto& [part, level] : o.levels)
                csv << "\"" << part.to_string() << "\"," << level << ",,,\n";
    }
    long long expected = partition_count(static_cast<int>(*opt.n));
    bool sum_ok = total == expected;
    text << "  total " << total << " vs p(n) = " << expected << (sum_ok ? " (ok)" : " (MISMATCH)")
         << "\n";
    Report rep;
    rep.body = json{{"command", "orbits"},
                    {"inputs", json{{"n", *opt.n}}},
                    {"results", json{{"orbits", std::move(rows)},
                                     {"total_size", total},
                                     {"partition_count", expected},
                                     {"sum_check", sum_ok}}}};
    rep.pass = sum_ok;
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

Report cmd_level_gf(const Options& opt) {
    auto base = parse_necklace_arg(opt);
    if (!base.all_white() && !is_primitive(base))
        throw CLI::ValidationError("level-gf requires a primitive necklace or a W power");
    int k = opt.k.value_or(1);
    if (k < 1) throw CLI::ValidationError("level-gf requires --k >= 1");
    auto n = power(base, k);
    auto orbit = build_orbit(n, {.max_level = {}, .max_nodes = opt.max_nodes});
    auto coeffs = level_gf(orbit);
    Report rep;
    std::ostringstream text, csv;
    text << "D_{" << base.to_string() << "^" << k << "}(x) = " << poly_text_ascending(coeffs)
         << "   (orbit size " << orbit.size() << ", n = " << orbit.n << ")\n";
    csv << "degree,coefficient\n";
    for (size_t d = 0; d < coeffs.size(); ++d) csv << d << ',' << coeffs[d] << "\n";
    rep.body = json{{"command", "level-gf"},
                    {"inputs", json{{"necklace", necklace_json(base)}, {"k", k}}},
                    {"results", json{{"n", orbit.n},
                                     {"size", orbit.size()},
                                     {"cycle_length", orbit.cycle_length()},
                                     {"polynomial", poly_text_ascending(coeffs)},
                                     {"coefficients", poly_json(coeffs)}}}};
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

Report cmd_limit_gf(const Options& opt) {
    auto p = forest_necklace(parse_necklace_arg(opt));
    auto fit = limit_gf(p, opt.depth, opt.max_nodes);
    const int used_depth = opt.depth.value_or(std::max(4 * p.length() + 4, 16));
    auto series = series_expand(fit, used_depth);

    int num_bound, den_bound;
    if (p.all_white()) {
        num_bound = 3;
        den_bound = 2;
    } else if (p.length() == 2) {
        num_bound = 3;
        den_bound = 3;
    } else {
        num_bound = 2 * p.length();
        den_bound = p.length();
    }
    bool num_ok = fit.num.degree() <= num_bound;
    bool den_ok = fit.den.degree() <= den_bound;

    auto cat = catalog_lookup(p);
    bool cat_match = cat && gf_equal(fit, *cat);

    if (opt.dot_path) {
        std::ofstream dot(*opt.dot_path);
        write_dot(dot, p, std::min(used_depth, 6));
    }

    Report rep;
    std::ostringstream text, csv;
    text << "H_" << p.to_string() << "(x) = (" << fit.num.to_string() << ") / ("
         << fit.den.to_string() << ")\n";
    text << "  series: ";
    for (size_t i = 0; i < series.size() && i <= 12; ++i) text << (i ? ", " : "") << series[i];
    text << ", ...\n";
    text << "  degree bounds: num " << fit.num.degree() << " <= " << num_bound
         << (num_ok ? " (ok)" : " (VIOLATED)") << ", den " << fit.den.degree() << " <= " << den_bound
         << (den_ok ? " (ok)" : " (VIOLATED)") << "\n";
    if (cat)
        text << "  catalog: " << (cat_match ? "match" : "MISMATCH") << "\n";
    else
        text << "  catalog: no stored form\n";
    csv << "series_index,coefficient\n";
    for (size_t i = 0; i < series.size(); ++i) csv << i << ',' << series[i].str() << "\n";
    rep.body = json{{"command", "limit-gf"},
                    {"inputs", json{{"necklace", necklace_json(p)}, {"depth", used_depth}}},
                    {"results",
                     json{{"fit", gf_json(fit)},
                          {"series", bigint_array(series)},
                          {"degree_bounds", json{{"num_max", num_bound},
                                                 {"den_max", den_bound},
                                                 {"num_ok", num_ok},
                                                 {"den_ok", den_ok}}},
                          {"catalog", json{{"present", cat.has_value()}, {"match", cat_match}}}}}};
    rep.pass = num_ok && den_ok && (!cat || cat_match);
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

Report cmd_coincide(const Options& opt) {
    auto p = forest_necklace(parse_necklace_arg(opt));
    int k = opt.k.value_or(2);
    if (k < 1) throw CLI::ValidationError("coincide requires --k >= 1");
    auto orbit = build_orbit(power(p, k + 1), {.max_level = {}, .max_nodes = opt.max_nodes});
    auto hist = level_gf(orbit);
    auto fit = limit_gf(p, opt.depth, opt.max_nodes);
    auto series = series_expand(fit, std::max<int>(k + 2, static_cast<int>(hist.size())));
    int agree = 0;
    while (agree < static_cast<int>(hist.size()) && BigInt(hist[static_cast<size_t>(agree)]) ==
                                                        series[static_cast<size_t>(agree)])
        ++agree;
    int depth_agreed = agree - 1;  // last agreeing level
    bool is_bw = p.word() == std::vector<uint8_t>{0, 1};
    bool pass = !is_bw || depth_agreed >= k;

    Report rep;
    std::ostringstream text, csv;
    text << "D_{" << p.to_string() << "^" << (k + 1) << "} vs H_" << p.to_string()
         << ": agreement through level " << depth_agreed;
    if (is_bw)
        text << " (required >= " << k << ": " << (pass ? "pass" : "FAIL") << ")";
    else
        text << " (informational)";
    text << "\n";
    csv << "level,orbit,limit\n";
    for (size_t i = 0; i < hist.size(); ++i)
        csv << i << ',' << hist[i] << ',' << series[i].str() << "\n";
    rep.body = json{{"command", "coincide"},
                    {"inputs", json{{"necklace", necklace_json(p)}, {"k", k}}},
                    {"results", json{{"orbit_histogram", hist},
                                     {"limit_series", bigint_array(series)},
                                     {"agreement_depth", depth_agreed},
                                     {"required_depth", is_bw ? json(k) : json(nullptr)},
                                     {"pass", pass}}}};
    rep.pass = pass;
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

Report cmd_orbit_sizes(const Options& opt) {
    auto p = parse_necklace_arg(opt);
    if (!is_primitive(p)) throw CLI::ValidationError("orbit-sizes requires a primitive necklace");
    int k_max = opt.k_max.value_or(4);
    if (k_max < 1) throw CLI::ValidationError("orbit-sizes requires --k-max >= 1");
    auto sizes = orbit_size_sequence(p, k_max, opt.max_nodes);

    std::optional<std::vector<long long>> expected;
    std::string law;
    if (p == Necklace::parse("BW")) {
        law = "T_k(2)";
        expected = std::vector<long long>{};
        for (int k = 1; k <= k_max; ++k) expected->push_back(chebyshev_T_at_2(k));
    } else if (p == Necklace::parse("BWW")) {
        law = "5^k";
        expected = std::vector<long long>{};
        long long v = 1;
        for (int k = 1; k <= k_max; ++k) expected->push_back(v *= 5);
    } else if (p == Necklace::parse("BBW")) {
        law = "7*5^(k-1)";
        expected = std::vector<long long>{};
        long long v = 7;
        for (int k = 1; k <= k_max; ++k, v *= 5) expected->push_back(v);
    }
    bool pass = !expected || sizes == *expected;

    Report rep;
    std::ostringstream text, csv;
    text << "orbit sizes of " << p.to_string() << "^k, k = 1.." << k_max << "\n";
    csv << "k,size,expected\n";
    json rows = json::array();
    for (int k = 1; k <= k_max; ++k) {
        long long got = sizes[static_cast<size_t>(k - 1)];
        text << "  k = " << k << ": " << got;
        csv << k << ',' << got << ',';
        json row{{"k", k}, {"size", got}};
        if (expected) {
            long long want = (*expected)[static_cast<size_t>(k - 1)];
            text << " vs " << law << " = " << want << (got == want ? " (ok)" : " (MISMATCH)");
            csv << want;
            row["expected"] = want;
        }
        text << "\n";
        csv << "\n";
        rows.push_back(std::move(row));
    }
    rep.body = json{{"command", "orbit-sizes"},
                    {"inputs", json{{"necklace", necklace_json(p)}, {"k_max", k_max}}},
                    {"results", json{{"rows", std::move(rows)},
                                     {"law", expected ? json(law) : json(nullptr)},
                                     {"pass", pass}}}};
    rep.pass = pass;
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

Report cmd_conjecture(const Options& opt) {
    auto p = parse_necklace_arg(opt);
    if (!is_primitive(p) || p.length() < 3)
        throw CLI::ValidationError("conjecture requires a primitive necklace of length >= 3");
    int k_max = opt.k_max.value_or(3);
    if (k_max < 2) throw CLI::ValidationError("conjecture requires --k-max >= 2");
    auto report = conjecture_ratios(p, k_max, opt.max_nodes);

    auto ratio_rows = [](const std::vector<std::pair<long long, long long>>& ratios) {
        json rows = json::array();
        for (size_t i = 0; i < ratios.size(); ++i)
            rows.push_back(json{{"k", i + 2},
                                {"num", ratios[i].first},
                                {"den", ratios[i].second},
                                {"integer", ratios[i].second == 1}});
        return rows;
    };

    Report rep;
    std::ostringstream text, csv;
    text << "orbit growth of " << report.p.to_string() << " (swap partner "
         << report.swapped.to_string() << "), k = 1.." << k_max << "\n";
    text << "  sizes:";
    for (long long s : report.sizes) text << ' ' << s;
    text << "\n  ratios:";
    for (auto& [num, den] : report.ratios) {
        text << ' ' << num;
        if (den != 1) text << '/' << den;
    }
    text << "\n  integer c: "
         << (report.has_integer_c ? std::to_string(report.c) : std::string("none")) << "\n";
    text << "  swap sizes:";
    for (long long s : report.swapped_sizes) text << ' ' << s;
    text << "\n  swap integer c: "
         << (report.swapped_has_integer_c ? std::to_string(report.swapped_c) : std::string("none"))
         << "\n  c match under color swap: " << (report.swap_match ? "yes" : "no") << "\n";
    csv << "k,size,ratio_num,ratio_den,swap_size\n";
    for (int k = 1; k <= k_max; ++k) {
        csv << k << ',' << report.sizes[static_cast<size_t>(k - 1)] << ',';
        if (k >= 2)
            csv << report.ratios[static_cast<size_t>(k - 2)].first << ','
                << report.ratios[static_cast<size_t>(k - 2)].second;
        else
            csv << ',';
        csv << ',' << report.swapped_sizes[static_cast<size_t>(k - 1)] << "\n";
    }
    rep.body = json{{"command", "conjecture"},
                    {"inputs", json{{"necklace", necklace_json(p)}, {"k_max", k_max}}},
                    {"results",
                     json{{"sizes", report.sizes},
                          {"ratios", ratio_rows(report.ratios)},
                          {"c", report.has_integer_c ? json(report.c) : json(nullptr)},
                          {"swapped", necklace_json(report.swapped)},
                          {"swapped_sizes", report.swapped_sizes},
                          {"swapped_ratios", ratio_rows(report.swapped_ratios)},
                          {"swapped_c",
                           report.swapped_has_integer_c ? json(report.swapped_c) : json(nullptr)},
                          {"swap_match", report.swap_match}}}};
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

Report cmd_catalog_check(const Options& opt) {
    Report rep;
    std::ostringstream text, csv;
    json rows = json::array();
    csv << "necklace,match,num_text,den_text\n";
    bool all_ok = true;
    for (const auto& [necklace, stored] : closed_form_catalog()) {
        auto fit = limit_gf(necklace, opt.depth, opt.max_nodes);
        bool match = gf_equal(fit, stored);
        all_ok = all_ok && match;
        text << "  " << necklace.to_string() << ": " << (match ? "match" : "MISMATCH") << "\n";
        if (!match)
            text << "    fitted: (" << fit.num.to_string() << ") / (" << fit.den.to_string()
                 << ")\n    stored: (" << stored.num.to_string() << ") / (" << stored.den.to_string()
                 << ")\n";
        csv << necklace.to_string() << ',' << (match ? "true" : "false") << ",\""
            << fit.num.to_string() << "\",\"" << fit.den.to_string() << "\"\n";
        rows.push_back(json{{"necklace", necklace_json(necklace)},
                            {"match", match},
                            {"fit", gf_json(fit)},
                            {"stored", gf_json(stored)}});
    }
    text << (all_ok ? "all closed forms reproduced\n" : "closed-form mismatches found\n");
    rep.body = json{{"command", "catalog-check"},
                    {"inputs", json::object()},
                    {"results", json{{"entries", std::move(rows)}, {"pass", all_ok}}}};
    rep.pass = all_ok;
    rep.text = "catalog check\n" + text.str();
    rep.csv = csv.str();
    return rep;
}

void emit(const Options& opt, Report rep, double wall_ms) {
    std::string payload;
    if (opt.output == "json") {
        json out = rep.body;
        out["pass"] = rep.pass;
        out["wall_time_ms"] = wall_ms;
        payload = out.dump(2) + "\n";
    } else if (opt.output == "csv") {
        payload = rep.csv;
    } else {
        payload = rep.text;
    }
    if (opt.out_path) {
        std::ofstream f(*opt.out_path);
        f << payload;
    } else {
        std::cout << payload;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bulgarian solitaire orbits, level statistics, and limiting generating functions"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool with_necklace, bool with_n) {
        if (with_necklace)
            cmd->add_option("--necklace", opt.necklace, "necklace, letters (BWW) or bits (100)");
        if (with_n) cmd->add_option("--n", opt.n, "partition total");
        cmd->add_option("--k", opt.k, "power of the primitive necklace");
        cmd->add_option("--k-max", opt.k_max, "largest power to enumerate");
        cmd->add_option("--depth", opt.depth, "forest truncation depth");
        cmd->add_option("--output", opt.output, "text | json | csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--out", opt.out_path, "write the report to a file");
        cmd->add_option("--max-nodes", opt.max_nodes, "enumeration node budget");
    };

    auto* orbits = app.add_subcommand("orbits", "decompose P(n) into necklace-indexed orbits");
    add_common(orbits, false, true);
    orbits->add_flag("--members", opt.members, "include per-partition level rows");
    auto* level_gf_cmd = app.add_subcommand("level-gf", "level-count polynomial of one orbit");
    add_common(level_gf_cmd, true, false);
    auto* limit_gf_cmd = app.add_subcommand("limit-gf", "fit the limiting generating function");
    add_common(limit_gf_cmd, true, false);
    limit_gf_cmd->add_option("--dot", opt.dot_path, "dump the truncated forest as DOT");
    auto* coincide = app.add_subcommand("coincide", "compare an orbit's levels with the limit");
    add_common(coincide, true, false);
    auto* orbit_sizes = app.add_subcommand("orbit-sizes", "orbit sizes of necklace powers");
    add_common(orbit_sizes, true, false);
    auto* conjecture = app.add_subcommand("conjecture", "geometric-growth evidence report");
    add_common(conjecture, true, false);
    auto* catalog = app.add_subcommand("catalog-check", "re-derive every stored closed form");
    add_common(catalog, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        auto start = std::chrono::steady_clock::now();
        Report rep;
        if (orbits->parsed())
            rep = cmd_orbits(opt);
        else if (level_gf_cmd->parsed())
            rep = cmd_level_gf(opt);
        else if (limit_gf_cmd->parsed())
            rep = cmd_limit_gf(opt);
        else if (coincide->parsed())
            rep = cmd_coincide(opt);
        else if (orbit_sizes->parsed())
            rep = cmd_orbit_sizes(opt);
        else if (conjecture->parsed())
            rep = cmd_conjecture(opt);
        else
            rep = cmd_catalog_check(opt);
        double wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        bool pass = rep.pass;
        emit(opt, std::move(rep), wall_ms);
        return pass ? kOk : kVerificationFailed;
    } catch (const ResourceGuardError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kResourceGuard;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const NoFitError& e) {
        std::cerr << e.what() << "; retry with a larger --depth\n";
        return kVerificationFailed;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kResourceGuard;
    }
}
