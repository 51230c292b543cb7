#include "aximhd/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aximhd/error.hpp"

namespace aximhd {

void set_thread_limit(int n) {
#ifdef _OPENMP
    static const int default_threads = omp_get_max_threads();
    omp_set_num_threads(n > 0 ? n : default_threads);
#else
    (void)n;
#endif
}

int apply_thread_env() {
    const char* env = std::getenv("AXIMHD_THREADS");
    if (!env || !*env) return 0;
    int n = 0;
    try {
        n = std::stoi(env);
    } catch (const std::exception&) {
        throw ConfigError(std::string("AXIMHD_THREADS: not an integer: '") + env + "'");
    }
    if (n < 0) throw ConfigError("AXIMHD_THREADS must be >= 0");
    set_thread_limit(n);
    return n;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace aximhd
