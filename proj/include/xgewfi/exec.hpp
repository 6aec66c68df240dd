#pragma once

namespace xgewfi {

// Execution policy for the data-parallel kernels. Parallel runs use OpenMP
// when the build enables it; both policies produce bitwise-identical output
// because every parallel loop writes disjoint slots and draws from
// pre-derived RNG substreams.
enum class Exec {
    Serial,
    Parallel,
};

// Number of worker threads a Parallel kernel would use (1 without OpenMP).
int max_threads();

}  // namespace xgewfi
