#include "qhgeo/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qhgeo {

namespace {

int initial_cap() {
    if (const char* env = std::getenv("QHGEO_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::atomic<int>& cap_storage() {
    static std::atomic<int> cap{initial_cap()};
    return cap;
}

}  // namespace

int thread_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_thread_cap(int threads) { cap_storage().store(threads > 0 ? threads : 1, std::memory_order_relaxed); }

}  // namespace qhgeo
