#pragma once

namespace eraser::tol {

// Single algebraic steps (norms, unitarity, idempotence).
inline constexpr double algebraic = 1e-12;
// Composed pipelines (QWP + projection + path collapse).
inline constexpr double pipeline = 1e-9;
// Below this a projection branch is treated as impossible.
inline constexpr double zero_probability = 1e-14;

}  // namespace eraser::tol
