#pragma once

namespace mmbeam {

// Numerical thresholds shared by the design and selection stages.
struct Tolerances {
    // Below this, |w^H H f| counts as "no energy left" in the channel.
    double beam_gain_floor = 1e-12;
    // Gram-Schmidt residual norm below which a vector lies in the span.
    double span_collapse = 1e-10;
    // Elementwise distance under which two codebook vectors are the same beam.
    double identical_beam = 1e-9;
    // Off-diagonal leakage allowed relative to the largest diagonal entry.
    double off_diagonal_rel = 1e-8;
    // Relative pivot threshold for singular Gram matrices.
    double singular_gram = 1e-12;
};

inline constexpr Tolerances kTol{};

}  // namespace mmbeam
