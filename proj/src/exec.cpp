#include "xgewfi/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xgewfi {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace xgewfi
