#ifndef LONGMEM_PARALLEL_HPP
#define LONGMEM_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "longmem/common.hpp"

namespace longmem {

inline int effective_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

// Run body(i) for i in [0, count). Results must be written to slots indexed
// by i so the outcome is independent of the schedule. The lowest-index
// exception is rethrown, matching what a serial run would report first.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    std::exception_ptr error;
    std::size_t error_index = count;
    std::mutex error_mutex;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(effective_threads(threads))
#endif
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (static_cast<std::size_t>(i) < error_index) {
                error_index = static_cast<std::size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace longmem

#endif
