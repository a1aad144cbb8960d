#ifndef GF_LAPLACE_INVERSION_HPP
#define GF_LAPLACE_INVERSION_HPP

#include <complex>
#include <functional>

namespace gf {

// f_hat must be analytic in the right half-plane (true for every transform
// arising here; branch cuts of s^a lie on the negative real axis).
using TransformFunction = std::function<std::complex<double>(std::complex<double>)>;

enum class InversionMethod { FixedTalbot, GaverStehfest };

struct InversionResult {
    double value = 0.0;
    InversionMethod method = InversionMethod::FixedTalbot;
    // For Talbot: node-refinement difference plus a roundoff floor from the
    // largest contour term. For Gaver-Stehfest: coefficient-scaled roundoff.
    double error_estimate = 0.0;
    bool flagged = false;  // set by invert_cross_checked on method disagreement
};

struct InversionOptions {
    int talbot_nodes = 32;
    int stehfest_terms = 16;  // must be even
};

InversionResult invert(const TransformFunction& f_hat, double t,
                       InversionMethod method,
                       const InversionOptions& opts = {});

// Talbot value with error_estimate = |Talbot - Gaver-Stehfest|; flags
// disagreement beyond 1e-4 relative. When the Talbot sum is dominated by
// cancellation (tiny result under large contour terms) the better-conditioned
// Gaver-Stehfest value is returned instead.
InversionResult invert_cross_checked(const TransformFunction& f_hat, double t,
                                     const InversionOptions& opts = {});

}  // namespace gf

#endif
