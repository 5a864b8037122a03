#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pbern {

enum class CaseStatus { pass, fail, skipped };

struct CaseResult {
    std::string name;       // deterministic descriptor: rv spec, lambda mode, n, r, ...
    CaseStatus status = CaseStatus::pass;
    bool diagnostic = false; // non-fatal when true (the geometric a_0 partial-sum check)
    std::string lhs, rhs;    // exact sides on failure
    std::string note;
};

struct IdentityReport {
    std::string suite;
    std::vector<CaseResult> cases;

    int passed() const {
        int n = 0;
        for (const auto& c : cases) n += c.status == CaseStatus::pass;
        return n;
    }
    int failed(bool include_diagnostics = true) const {
        int n = 0;
        for (const auto& c : cases)
            n += c.status == CaseStatus::fail && (include_diagnostics || !c.diagnostic);
        return n;
    }
    int skipped() const {
        int n = 0;
        for (const auto& c : cases) n += c.status == CaseStatus::skipped;
        return n;
    }
    // Pass/fail gate: diagnostics are non-fatal unless strict.
    bool ok(bool strict = false) const { return failed(strict) == 0; }
};

// Deterministic RNG helper: identical (seed, sequence of calls) gives
// identical values on every platform. Used for seeded random-polynomial
// cases; suite enumeration is otherwise exhaustive.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi] via rejection-free modulo (bias irrelevant here)
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

} // namespace pbern
