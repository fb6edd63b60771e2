#include "quasispec/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <thread>

#include "quasispec/errors.hpp"

namespace qs {

#ifdef _OPENMP

void set_threads(int n) {
    if (n < 0) {
        throw domain_error("thread count must be >= 0");
    }
    omp_set_num_threads(n == 0 ? omp_get_num_procs() : n);
}

int max_threads() { return omp_get_max_threads(); }

#else

void set_threads(int n) {
    if (n < 0) {
        throw domain_error("thread count must be >= 0");
    }
}

int max_threads() { return 1; }

#endif

} // namespace qs
