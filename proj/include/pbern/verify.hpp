#pragma once

#include "pbern/represent.hpp"

namespace pbern {

/**
 * Named, reproducible identity suites. Every suite enumerates its cases
 * exhaustively over the fixture grid (the six fixture random variables,
 * lambda symbolic and lambda = 1/3, r <= 3 where applicable); only the
 * oracle-comparison suites draw seeded random polynomials, so a fixed
 * (suite, nmax, seed) triple always yields the identical report.
 *
 * All comparisons are exact. The single exception is the geometric a_0
 * partial-sum check from the section 5 closed forms, which is reported as a
 * non-fatal diagnostic.
 */
const std::vector<std::string>& suite_names();

IdentityReport run_suite(const std::string& name, int nmax, std::uint64_t seed);

// Per-distribution closed-form coefficients of x^n in both bases versus the
// expansion engines; example is one of 'a'..'f'.
IdentityReport section5_crosscheck(char example, int n);

// Fixture random variables used across all suites.
const std::vector<RandomVariable>& fixture_random_variables();

} // namespace pbern
