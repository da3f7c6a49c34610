#pragma once

// Named mappings used by the built-in scenarios, the tests and the CLI.

#include "ordfix/mapping.hpp"

namespace ordfix::corpus {

/// T x = 0.5 x + (1, 1) on the orthant of R^2; unique fixed point (2, 2).
MappingSpec affine_contraction();

/// T x = A x + b on the orthant of R^5 with A_ij = 0.15 and b = (1..5)/5.
MappingSpec affine_5d();

/// T x = x + (1, 0.5) on the orthant of R^2; no fixed point.
MappingSpec translation();

/// T x = (1, 2) on the orthant of R^2.
MappingSpec constant();

/// T x = min(x, (1, 2)) on the orthant of R^2; fixed points fill [0, (1, 2)].
MappingSpec truncation();

/// Coordinatewise step g(t) = 0 for t <= 3, g(t) = 2 for t >= 4 on the
/// lattice {0..5}^2. Monotone and alpha-nonexpansive for alpha = 1/3 in the
/// Euclidean norm, yet not nonexpansive: |g(4) - g(3)| = 2 > 1.
MappingSpec alpha_step_grid();
inline constexpr double kAlphaStepGridAlpha = 1.0 / 3.0;

/// Translation by -(0.5, 0.25) followed by projection onto [0, 3]^2, as a
/// self-map of the box; fixed point (0, 0).
MappingSpec negative_translation_box();

/// T x = 0.5 x - (1, 1) on R^2; unique fixed point (-2, -2).
MappingSpec affine_negative();

/// The identity on the orthant of R^2.
MappingSpec identity();

/// T x = -x + (3, 3) on [0, 3]^2: a self-map that reverses the order.
MappingSpec order_reversing_box();

}  // namespace ordfix::corpus
