#pragma once

#include "qunit/spin.hpp"

namespace qunit {

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>, Condon-Shortley phase.
///
/// Evaluated with the Racah sum in exact rational arithmetic; only the
/// final square root is taken in floating point. Returns 0 when m != m1 + m2
/// or the triangle rule fails. Throws std::invalid_argument when a
/// projection is out of range or has the wrong half-integer parity.
double cg_coefficient(SpinLabel j1, SpinLabel j2, SpinLabel j, HalfInt m1, HalfInt m2, HalfInt m);

}  // namespace qunit
