#pragma once

namespace elastica {

// Worker count for internal parallel regions. ELASTICA_THREADS caps the
// OpenMP default; unset or <= 0 leaves it alone. Cached on first use.
int thread_count();

}  // namespace elastica
