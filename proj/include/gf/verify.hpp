#ifndef GF_VERIFY_HPP
#define GF_VERIFY_HPP

#include <string>

#include "gf/kernel.hpp"
#include "gf/report.hpp"

namespace gf {

enum class SuiteName { Default, Extended };

SuiteName suite_from_string(const std::string& name);  // invalid_argument

// Default: kernel admissibility, relaxation bounds, complete monotonicity,
// the two-route ODE cross-check, homogeneous estimates in 1d, subordination
// normalization and reconstruction. Extended adds dimensions 2 and 3, the
// source-term estimates, the long-time decay fit, and the sampler comparison.
VerificationReport verify_suite(SuiteName name, const Kernel& kernel);

}  // namespace gf

#endif
