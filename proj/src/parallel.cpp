#include "blowuplab/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blowuplab {

int thread_cap() {
    static const int cap = [] {
#ifdef _OPENMP
        int n = omp_get_max_threads();
#else
        int n = 1;
#endif
        if (const char* env = std::getenv("BLOWUPLAB_THREADS")) {
            int req = std::atoi(env);
            if (req >= 1 && req < n) n = req;
        }
        return n;
    }();
    return cap;
}

}  // namespace blowuplab
