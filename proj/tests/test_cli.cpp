// CLI integration checks, driven through the real binary (argv[1]).
// Covers the documented exit codes, output shapes, serialization round-trips
// and byte-for-byte determinism of repeated invocations.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "pbern/bernoulli.hpp"
#include "pbern/stirling.hpp"

using json = nlohmann::json;
using namespace pbern;

namespace {

int failures = 0;

void expect(bool cond, const std::string& what) {
    if (!cond) {
        ++failures;
        std::cout << "FAIL " << what << "\n";
    }
}

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& cmd) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return {127, ""};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-pbern>\n";
        return 1;
    }
    std::string bin = argv[1];

    // documented examples
    {
        auto r = run(bin + " stirling --kind 2 --variant prob --rv exponential:alpha=3/2 --nmax 4");
        expect(r.status == 0, "stirling prob exit code");
        json doc = json::parse(r.out);
        expect(doc["rows"].back()["n"] == 4 && doc["rows"].back()["k"] == 4, "stirling row order");
        expect(doc["rows"].back()["value"] == "16/81", "S_2^Y(4,4) = E[Y]^4 = 16/81");

        // serialized values re-parse to the exact table entries
        auto y = RandomVariable::make_exponential(Rational(3, 2));
        auto table = build_table(StirlingFamily::s2_prob, y, {}, 4);
        for (const auto& row : doc["rows"]) {
            RingValue parsed = parse_ring_value(row["value"].get<std::string>(), Mode::rational);
            expect(parsed == table.at(row["n"].get<int>(), row["k"].get<int>()),
                   "stirling JSON round-trip");
        }
    }
    {
        auto r = run(bin + " stirling --kind 1 --variant classical --nmax 3 --format csv");
        expect(r.status == 0, "stirling csv exit");
        expect(r.out.find("3,1,2\n") != std::string::npos, "S_1(3,1) = 2 in CSV");
    }
    {
        auto r = run(bin + " stirling --kind 2 --variant degenerate --lambda symbolic --nmax 2");
        json doc = json::parse(r.out);
        bool found = false;
        for (const auto& row : doc["rows"])
            if (row["n"] == 2 && row["k"] == 1) {
                found = row["value"] == json::array({"1", "-1"});
                RingValue parsed = parse_ring_value("1,-1", Mode::lambda);
                auto table = build_table(StirlingFamily::s2_deg, {}, RingValue::lambda(), 2);
                expect(parsed == table.at(2, 1), "degenerate JSON round-trip");
            }
        expect(found, "S_{2,lambda}(2,1) = 1 - lambda");
    }
    {
        auto r = run(bin + " expand --poly 0,0,1 --basis B --rv constant1");
        json doc = json::parse(r.out);
        expect(doc["coefficients"] == json::array({"1/3", "1", "1"}), "classical x^2 expansion");
    }
    {
        auto r = run(bin + " expand --poly 0,0,0,1 --basis B --rv exponential:alpha=3/2");
        json doc = json::parse(r.out);
        expect(doc["coefficients"][0] == "2/3", "exponential a_0 = 1/alpha");
    }
    {
        auto r = run(bin + " expand --poly 5 --basis B --rv poisson:alpha=3/2");
        json doc = json::parse(r.out);
        expect(doc["coefficients"] == json::array({"15/2"}), "constant polynomial expansion");
    }
    {
        auto r = run(bin + " expand --poly 0,1,1 --basis beta --lambda symbolic --rv bernoulli:p=2/3 --order 2");
        expect(r.status == 0, "degenerate higher-order expand");
        json doc = json::parse(r.out);
        expect(doc["method"] == "higher-order-deg", "higher-order method tag");
    }
    {
        auto r = run(bin + " expand --poly 0,0,1 --basis beta --lambda 1/3 --rv constant1");
        expect(r.status == 0, "fixed-lambda expand");
        json doc = json::parse(r.out);
        expect(doc["lambda"] == "1/3", "fixed-lambda metadata");
        // a_0 = 1/3 - (1/3)/2 + (1/3)^2/6 = 5/27 at lambda = 1/3
        expect(doc["coefficients"][0] == "5/27", "fixed-lambda a_0");
    }
    {
        auto r = run(bin + " bernoulli --family bern-num --nmax 4");
        json doc = json::parse(r.out);
        expect(doc["rows"][2]["value"] == "1/6", "B_2 = 1/6");
        expect(doc["rows"][4]["value"] == "-1/30", "B_4 = -1/30");
    }
    {
        auto r = run(bin + " bernoulli --family prob-bern --rv geometric:p=1/3 --nmax 3");
        expect(r.status == 0, "prob-bern table");
        json doc = json::parse(r.out);
        expect(doc["rows"][0]["coeffs"] == json::array({"1/3"}), "B_0^Y = 1/E[Y] = 1/3");
    }
    {
        auto r = run(bin + " bernoulli --family frobenius-euler --u -1/2 --order 2 --nmax 3");
        expect(r.status == 0, "frobenius-euler table");
        json doc = json::parse(r.out);
        expect(doc["rows"][0]["value"] == "1", "H_0^{(2)}(u) = 1");
    }

    // verify: exit 0 on success, deterministic bytes
    {
        auto r = run(bin + " verify --suite lemma51 --nmax 12");
        expect(r.status == 0, "verify lemma51 exit 0");
        json doc = json::parse(r.out);
        expect(doc["ok"] == true, "verify lemma51 ok");
    }
    {
        auto a = run(bin + " stirling --kind 2 --variant prob-degenerate --rv gamma:alpha=5/2,beta=3 "
                           "--lambda symbolic --nmax 5");
        auto b = run(bin + " stirling --kind 2 --variant prob-degenerate --rv gamma:alpha=5/2,beta=3 "
                           "--lambda symbolic --nmax 5");
        expect(a.status == 0 && a.out == b.out, "repeated invocation is byte-identical");
    }

    // exit codes
    expect(run(bin + " verify --suite no-such").status == 2, "unknown suite exits 2");
    expect(run(bin + " stirling --kind 3 --nmax 2").status == 2, "bad kind exits 2");
    expect(run(bin + " stirling --kind 2 --variant prob --nmax 2").status == 2, "missing --rv exits 2");
    expect(run(bin + " expand --poly 0,,1 --basis B --rv constant1").status == 2, "malformed poly exits 2");
    expect(run(bin + " expand --poly 1,1 --basis B --rv bernoulli:p=7/3").status == 2,
           "out-of-domain parameter exits 2");
    expect(run(bin + " expand --poly 1,1 --basis beta --rv constant1").status == 2,
           "beta basis without lambda exits 2");
    expect(run(bin + " bernoulli --family frobenius-euler --u 1 --nmax 2").status == 2, "u = 1 exits 2");
    expect(run(bin).status == 2, "no subcommand exits 2");

    // engine failures (as opposed to usage errors) exit 1: a custom moment
    // list that is too short for the requested expansion order
    expect(run(bin + " expand --poly 0,0,0,1 --basis B --rv custom:1,1/2,1/3").status == 1,
           "insufficient custom moments exits 1");

    // --out writes atomically (file appears with full content)
    {
        std::string path = "cli_test_out.json";
        auto r = run(bin + " bernoulli --family bern --nmax 2 --out " + path);
        expect(r.status == 0 && r.out.empty(), "--out silences stdout");
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        expect(json::parse(ss.str())["rows"].size() == 3, "--out file parses");
        std::remove(path.c_str());
    }

    if (failures) {
        std::cout << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
