#include "elastica/threading.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace elastica {

int thread_count() {
  static const int cached = [] {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("ELASTICA_THREADS")) {
      int cap = std::atoi(env);
      if (cap > 0 && cap < n) n = cap;
    }
    return n > 0 ? n : 1;
  }();
  return cached;
}

}  // namespace elastica
