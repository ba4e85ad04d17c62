#pragma once

namespace blowuplab {

/// Execution policy for the data-parallel kernels (per-z-level transforms,
/// per-mode elliptic solves). Serial is the reference implementation kept for
/// testing; OpenMP must produce bitwise-identical results (disjoint writes,
/// no cross-thread reductions).
enum class Exec { Serial, OpenMP };

/// Thread cap for OpenMP regions. Reads BLOWUPLAB_THREADS once (>=1);
/// falls back to the OpenMP default when unset.
int thread_cap();

}  // namespace blowuplab
