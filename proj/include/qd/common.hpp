#pragma once

#include <complex>

namespace qd {

using cplx = std::complex<double>;

/// Default numerical tolerance for representation-theoretic identities.
inline constexpr double kRepTolerance = 1e-9;

/// Default tolerance for operator-level identities (projectors, commutators).
inline constexpr double kOpTolerance = 1e-10;

/// Entries below this magnitude are dropped when storing sparse operators.
inline constexpr double kSparseDropTolerance = 1e-14;

}  // namespace qd
