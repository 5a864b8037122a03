// pbern: batch CLI for exact Stirling/Bernoulli tables, basis expansions and
// identity verification. All numeric I/O is exact rational text; JSON is the
// canonical format (values as strings, never floats), CSV is available for
// tables. Exit codes: 0 success, 1 engine/verification failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pbern/verify.hpp"

using json = nlohmann::ordered_json;
using namespace pbern;

namespace {

json ring_json(const RingValue& v) {
    if (v.mode() == Mode::rational) return rat_to_string(v.rational_value());
    json arr = json::array();
    const LambdaPoly& p = v.lambda_value();
    if (p.is_zero_poly()) {
        arr.push_back("0");
        return arr;
    }
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(rat_to_string(p.coeff(i)));
    return arr;
}

std::string ring_csv(const RingValue& v) {
    std::string s = ring_to_string(v);
    if (v.mode() == Mode::lambda) return "\"" + s + "\"";
    return s;
}

// Atomic write: temp file in the destination directory, then rename.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(out_path);
    fs::path dir = target.parent_path();
    fs::path tmp = (dir.empty() ? fs::path(".") : dir) / (target.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw PreconditionError("cannot open output file '" + tmp.string() + "'");
        f << text;
    }
    fs::rename(tmp, target);
}

std::optional<RingValue> parse_lambda_flag(const std::string& lambda_spec) {
    if (lambda_spec.empty()) return std::nullopt;
    if (lambda_spec == "symbolic") return RingValue::lambda();
    return RingValue(parse_rational(lambda_spec));
}

json lambda_json(const std::optional<RingValue>& lambda) {
    if (!lambda) return nullptr;
    if (lambda->mode() == Mode::lambda) return "symbolic";
    return rat_to_string(lambda->rational_value());
}

struct CommonFlags {
    std::string format = "json";
    std::string out_path;
    std::string rv_spec;
    std::string lambda_spec;
    bool strict = false;
    std::uint64_t seed = 1;
};

int cmd_stirling(int kind, const std::string& variant, int nmax, const CommonFlags& flags) {
    bool prob = variant == "prob" || variant == "prob-degenerate";
    bool degenerate = variant == "degenerate" || variant == "prob-degenerate";
    if (!prob && variant != "classical" && variant != "degenerate")
        throw CLI::ValidationError("--variant must be classical|degenerate|prob|prob-degenerate");
    if (prob && flags.rv_spec.empty())
        throw CLI::ValidationError("--rv is required for probabilistic variants");
    if (degenerate && flags.lambda_spec.empty())
        throw CLI::ValidationError("--lambda is required for degenerate variants");

    StirlingFamily family;
    if (kind == 1)
        family = prob ? (degenerate ? StirlingFamily::s1_prob_deg : StirlingFamily::s1_prob)
                      : (degenerate ? StirlingFamily::s1_deg : StirlingFamily::s1);
    else
        family = prob ? (degenerate ? StirlingFamily::s2_prob_deg : StirlingFamily::s2_prob)
                      : (degenerate ? StirlingFamily::s2_deg : StirlingFamily::s2);

    std::optional<RandomVariable> y;
    if (prob) y = RandomVariable::parse(flags.rv_spec);
    std::optional<RingValue> lambda = parse_lambda_flag(flags.lambda_spec);
    if (!degenerate) lambda.reset();

    StirlingTable table = build_table(family, y, lambda, nmax);

    if (flags.format == "csv") {
        std::string out = "n,k,value\n";
        for (int n = 0; n <= nmax; ++n)
            for (int k = 0; k <= n; ++k)
                out += std::to_string(n) + "," + std::to_string(k) + "," + ring_csv(table.at(n, k)) + "\n";
        emit(out, flags.out_path);
        return 0;
    }
    json doc;
    doc["command"] = "stirling";
    doc["kind"] = kind;
    doc["variant"] = variant;
    doc["rv"] = y ? json(y->spec_string()) : json(nullptr);
    doc["lambda"] = lambda_json(lambda);
    doc["nmax"] = nmax;
    json rows = json::array();
    for (int n = 0; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k)
            rows.push_back(json{{"n", n}, {"k", k}, {"value", ring_json(table.at(n, k))}});
    doc["rows"] = std::move(rows);
    emit(doc.dump(2) + "\n", flags.out_path);
    return 0;
}

int cmd_bernoulli(const std::string& family_name, std::optional<int> order, const std::string& u_spec,
                  int nmax, const CommonFlags& flags) {
    static const std::map<std::string, PolyFamily> poly_map = {
        {"bern", PolyFamily::bern},
        {"deg-bern", PolyFamily::deg_bern},
        {"prob-bern", PolyFamily::prob_bern},
        {"prob-deg-bern", PolyFamily::prob_deg_bern},
    };
    static const std::map<std::string, SpecialFamily> special_map = {
        {"bern-num", SpecialFamily::bern_num},
        {"deg-bern-num", SpecialFamily::deg_bern_num},
        {"bern-second", SpecialFamily::bern_second},
        {"deg-bern-second", SpecialFamily::deg_bern_second},
        {"frobenius-euler", SpecialFamily::frobenius_euler},
        {"deg-frobenius-euler", SpecialFamily::deg_frobenius_euler},
    };
    std::optional<RingValue> lambda = parse_lambda_flag(flags.lambda_spec);

    auto pit = poly_map.find(family_name);
    if (pit != poly_map.end()) {
        PolyFamily fam = pit->second;
        if (order) {
            switch (fam) { // an explicit order selects the order-r family
                case PolyFamily::bern: fam = PolyFamily::bern_order; break;
                case PolyFamily::deg_bern: fam = PolyFamily::deg_bern_order; break;
                case PolyFamily::prob_bern: fam = PolyFamily::prob_bern_order; break;
                case PolyFamily::prob_deg_bern: fam = PolyFamily::prob_deg_bern_order; break;
                default: break;
            }
        }
        if (poly_family_probabilistic(fam) && flags.rv_spec.empty())
            throw CLI::ValidationError("--rv is required for probabilistic families");
        if (poly_family_degenerate(fam) && !lambda)
            throw CLI::ValidationError("--lambda is required for degenerate families");
        std::optional<RandomVariable> y;
        if (poly_family_probabilistic(fam)) y = RandomVariable::parse(flags.rv_spec);
        PolySequence seq = poly_sequence(fam, y, lambda, order.value_or(1), nmax);

        if (flags.format == "csv") {
            std::string out = "n,coeffs\n";
            for (int n = 0; n <= nmax; ++n) {
                std::string row;
                for (int i = 0; i <= seq.at(n).degree(); ++i) {
                    if (i) row += ";";
                    row += ring_to_string(seq.at(n).coeff(i));
                }
                out += std::to_string(n) + ",\"" + row + "\"\n";
            }
            emit(out, flags.out_path);
            return 0;
        }
        json doc;
        doc["command"] = "bernoulli";
        doc["family"] = poly_family_name(fam);
        doc["order"] = seq.r;
        doc["rv"] = y ? json(y->spec_string()) : json(nullptr);
        doc["lambda"] = lambda_json(seq.lambda);
        doc["nmax"] = nmax;
        json rows = json::array();
        for (int n = 0; n <= nmax; ++n) {
            json coeffs = json::array();
            for (int i = 0; i <= seq.at(n).degree(); ++i) coeffs.push_back(ring_json(seq.at(n).coeff(i)));
            rows.push_back(json{{"n", n}, {"coeffs", std::move(coeffs)}});
        }
        doc["rows"] = std::move(rows);
        emit(doc.dump(2) + "\n", flags.out_path);
        return 0;
    }

    auto sit = special_map.find(family_name);
    if (sit == special_map.end())
        throw CLI::ValidationError("unknown --family '" + family_name + "'");
    SpecialFamily fam = sit->second;
    if (special_family_degenerate(fam) && !lambda)
        throw CLI::ValidationError("--lambda is required for degenerate families");
    Rational u = 0;
    if (special_family_has_u(fam)) {
        if (u_spec.empty()) throw CLI::ValidationError("--u is required for Frobenius-Euler families");
        u = parse_rational(u_spec);
    }
    SpecialSequence seq = special_sequence(fam, lambda, order.value_or(1), u, nmax);

    if (flags.format == "csv") {
        std::string out = "n,value\n";
        for (int n = 0; n <= nmax; ++n)
            out += std::to_string(n) + "," + ring_csv(seq.at(n)) + "\n";
        emit(out, flags.out_path);
        return 0;
    }
    json doc;
    doc["command"] = "bernoulli";
    doc["family"] = special_family_name(fam);
    doc["order"] = seq.r;
    doc["u"] = special_family_has_u(fam) ? json(rat_to_string(u)) : json(nullptr);
    doc["lambda"] = lambda_json(seq.lambda);
    doc["nmax"] = nmax;
    json rows = json::array();
    for (int n = 0; n <= nmax; ++n) rows.push_back(json{{"n", n}, {"value", ring_json(seq.at(n))}});
    doc["rows"] = std::move(rows);
    emit(doc.dump(2) + "\n", flags.out_path);
    return 0;
}

int cmd_expand(const std::string& poly_spec, const std::string& basis, std::optional<int> order, int form,
               const CommonFlags& flags) {
    if (flags.format == "csv") throw CLI::ValidationError("expand supports only --format json");
    if (flags.rv_spec.empty()) throw CLI::ValidationError("--rv is required");
    if (poly_spec.empty()) throw CLI::ValidationError("--poly requires a coefficient list");
    std::vector<Rational> coeffs;
    std::size_t pos = 0;
    while (pos <= poly_spec.size()) {
        std::size_t comma = poly_spec.find(',', pos);
        coeffs.push_back(parse_rational(std::string_view(poly_spec).substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    XPolynomial p = poly_from_rationals(coeffs);
    RandomVariable y = RandomVariable::parse(flags.rv_spec);
    std::optional<RingValue> lambda = parse_lambda_flag(flags.lambda_spec);

    BasisExpansion e = [&] {
        if (basis == "B") {
            if (order && *order != 1) return expand_higher(p, y, std::nullopt, *order);
            return expand_prob_bernoulli(p, y, form);
        }
        if (basis == "beta") {
            if (!lambda) throw CLI::ValidationError("--lambda is required for the beta basis");
            if (order && *order != 1) return expand_higher(p, y, lambda, *order);
            return expand_prob_deg_bernoulli(p, y, *lambda, form);
        }
        throw CLI::ValidationError("--basis must be B or beta");
    }();

    json doc;
    doc["command"] = "expand";
    doc["basis"] = basis;
    doc["family"] = poly_family_name(e.basis);
    doc["rv"] = y.spec_string();
    doc["lambda"] = lambda_json(e.lambda);
    doc["order"] = e.r;
    doc["method"] = e.method;
    json cs = json::array();
    for (const auto& c : e.coeffs) cs.push_back(ring_json(c));
    doc["coefficients"] = std::move(cs);
    emit(doc.dump(2) + "\n", flags.out_path);
    return 0;
}

int cmd_verify(const std::string& suite, int nmax, const CommonFlags& flags) {
    if (flags.format == "csv") throw CLI::ValidationError("verify supports only --format json");
    std::vector<std::string> selected;
    if (suite == "all") {
        selected = suite_names();
    } else {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end())
            throw CLI::ValidationError("unknown suite '" + suite + "'");
        selected.push_back(suite);
    }

    json doc;
    doc["command"] = "verify";
    doc["nmax"] = nmax;
    doc["seed"] = flags.seed;
    doc["strict"] = flags.strict;
    json suites = json::array();
    bool all_ok = true;
    for (const auto& name : selected) {
        IdentityReport rep = run_suite(name, nmax, flags.seed);
        all_ok = all_ok && rep.ok(flags.strict);
        json cases = json::array();
        for (const auto& c : rep.cases) {
            json jc;
            jc["name"] = c.name;
            jc["status"] = c.status == CaseStatus::pass   ? "pass"
                           : c.status == CaseStatus::fail ? "fail"
                                                          : "skipped";
            if (c.diagnostic) jc["diagnostic"] = true;
            if (!c.note.empty()) jc["note"] = c.note;
            if (c.status == CaseStatus::fail) {
                jc["lhs"] = c.lhs;
                jc["rhs"] = c.rhs;
            }
            cases.push_back(std::move(jc));
        }
        suites.push_back(json{{"suite", rep.suite},
                              {"total", rep.cases.size()},
                              {"passed", rep.passed()},
                              {"failed", rep.failed(true)},
                              {"skipped", rep.skipped()},
                              {"ok", rep.ok(flags.strict)},
                              {"cases", std::move(cases)}});
    }
    doc["suites"] = std::move(suites);
    doc["ok"] = all_ok;
    emit(doc.dump(2) + "\n", flags.out_path);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact probabilistic Bernoulli/Stirling toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto add_common = [&](CLI::App* sub, bool with_rv, bool with_lambda) {
        sub->add_option("--format", flags.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", flags.out_path, "write output atomically to PATH");
        sub->add_option("--seed", flags.seed, "seed for seeded cases (verify)");
        sub->add_flag("--strict", flags.strict, "treat diagnostics as fatal (verify)");
        if (with_rv) sub->add_option("--rv", flags.rv_spec, "random variable spec, e.g. exponential:alpha=3/2");
        if (with_lambda) sub->add_option("--lambda", flags.lambda_spec, "'symbolic' or a rational like 1/3");
    };

    auto* st = app.add_subcommand("stirling", "emit a Stirling-number table");
    int kind = 2, nmax = 8;
    std::string variant = "classical";
    st->add_option("--kind", kind, "1 or 2")->check(CLI::IsMember({1, 2}));
    st->add_option("--variant", variant, "classical|degenerate|prob|prob-degenerate");
    st->add_option("--nmax", nmax, "table size")->required();
    add_common(st, true, true);

    auto* be = app.add_subcommand("bernoulli", "emit a Bernoulli-side table");
    std::string family;
    std::optional<int> order;
    std::string u_spec;
    be->add_option("--family", family,
                   "bern|deg-bern|prob-bern|prob-deg-bern|bern-num|deg-bern-num|bern-second|"
                   "deg-bern-second|frobenius-euler|deg-frobenius-euler")
        ->required();
    be->add_option("--order", order, "order r (selects the order-r family)");
    be->add_option("--u", u_spec, "Frobenius-Euler parameter u != 1");
    be->add_option("--nmax", nmax, "table size")->required();
    add_common(be, true, true);

    auto* ex = app.add_subcommand("expand", "expand a polynomial in a Bernoulli basis");
    std::string poly_spec, basis = "B";
    int form = 1;
    ex->add_option("--poly", poly_spec, "ascending coefficients, e.g. 0,0,1")->required();
    ex->add_option("--basis", basis, "B (plain) or beta (degenerate)");
    ex->add_option("--order", order, "basis order r (default 1)");
    ex->add_option("--form", form, "coefficient form 1|2|3")->check(CLI::IsMember({1, 2, 3}));
    add_common(ex, true, true);

    auto* ve = app.add_subcommand("verify", "run identity suites");
    std::string suite = "all";
    ve->add_option("--suite", suite, "suite id or 'all'");
    ve->add_option("--nmax", nmax, "grid size");
    add_common(ve, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0, usage errors exit 2
    }

    try {
        if (st->parsed()) return cmd_stirling(kind, variant, nmax, flags);
        if (be->parsed()) return cmd_bernoulli(family, order, u_spec, nmax, flags);
        if (ex->parsed()) return cmd_expand(poly_spec, basis, order, form, flags);
        if (ve->parsed()) return cmd_verify(suite, nmax, flags);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
