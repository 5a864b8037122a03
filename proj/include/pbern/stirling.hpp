#pragma once

#include <memory>
#include <optional>

#include "pbern/randvar.hpp"
#include "pbern/report.hpp"
#include "pbern/xops.hpp"

namespace pbern {

// The eight Stirling families. Second-kind tables are read off powers of a
// base delta series; first-kind tables use the compositional inverse of the
// corresponding second-kind base, which is distribution-agnostic. The
// per-distribution closed forms exist only as cross-checks.
enum class StirlingFamily { s1, s2, s1_deg, s2_deg, s1_prob, s2_prob, s1_prob_deg, s2_prob_deg };

const char* family_name(StirlingFamily f);
bool family_is_degenerate(StirlingFamily f);
bool family_is_probabilistic(StirlingFamily f);
bool family_is_first_kind(StirlingFamily f);

class StirlingTable {
  public:
    StirlingTable(StirlingFamily family, std::optional<RandomVariable> y, std::optional<RingValue> lambda,
                  int nmax, std::vector<std::vector<RingValue>> entries)
        : family_(family), y_(std::move(y)), lambda_(std::move(lambda)), nmax_(nmax),
          entries_(std::move(entries)) {}

    StirlingFamily family() const { return family_; }
    const std::optional<RandomVariable>& y() const { return y_; }
    const std::optional<RingValue>& lambda() const { return lambda_; }
    int nmax() const { return nmax_; }
    Mode mode() const { return entries_[0][0].mode(); }

    // entries(n,k); zero (of the table's mode) for k > n or k < 0.
    const RingValue& at(int n, int k) const;

  private:
    StirlingFamily family_;
    std::optional<RandomVariable> y_;
    std::optional<RingValue> lambda_;
    int nmax_;
    std::vector<std::vector<RingValue>> entries_;
    RingValue zero_{};
    friend StirlingTable build_table(StirlingFamily, std::optional<RandomVariable>, std::optional<RingValue>, int);
};

StirlingTable build_table(StirlingFamily family, std::optional<RandomVariable> y,
                          std::optional<RingValue> lambda, int nmax);

// Shared immutable cache; repeated requests for the same (family, Y, lambda,
// nmax) return the same table.
std::shared_ptr<const StirlingTable> stirling_cached(StirlingFamily family,
                                                     std::optional<RandomVariable> y,
                                                     std::optional<RingValue> lambda, int nmax);

// Alternating-binomial moment formula for S_2^Y(n,k); must equal the
// series-built table entry.
Rational prob_s2_direct(const RandomVariable& y, int n, int k);

// The per-distribution closed forms for S_1^Y (lambda absent) and
// S_{1,lambda}^Y (lambda present). Cross-checks only.
RingValue prob_s1_closed_form(const RandomVariable& y, const std::optional<RingValue>& lambda, int n, int k);

// Orthogonality sum_k S2(n,k)S1(k,l) = delta_{n,l}, the transpose, and the
// inverse relations (b)/(c) on seeded random sequences.
IdentityReport check_orthogonality(const StirlingTable& second_kind, const StirlingTable& first_kind,
                                   std::uint64_t seed = 1);

} // namespace pbern
