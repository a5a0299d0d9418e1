#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

#include "fmtk/determination.hpp"

namespace fmtk {

enum class ExecMode { Serial, Parallel };

// Runs f(i) for i in [0, count). In parallel mode iterations are spread over
// OpenMP threads; callers must make outcomes independent of scheduling
// (instance-indexed slots or merge-by-min-index accumulators). Exceptions are
// captured inside the region and the least-index one is rethrown.
template <class F>
void sweep(ExecMode mode, std::size_t count, F&& f) {
    if (mode == ExecMode::Serial) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::exception_ptr first_error = nullptr;
    std::size_t first_index = count;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

// Sweep with a per-thread DeterminationMap, merged after the region. The
// merge keeps least instance indices per (key,value), so the result equals
// the serial accumulation regardless of scheduling.
template <class F>
DeterminationMap sweep_determination(ExecMode mode, std::size_t count, F&& f) {
    if (mode == ExecMode::Serial) {
        DeterminationMap map;
        for (std::size_t i = 0; i < count; ++i) f(map, i);
        return map;
    }
    const int threads = omp_get_max_threads();
    std::vector<DeterminationMap> maps(static_cast<std::size_t>(threads));
    std::exception_ptr first_error = nullptr;
    std::size_t first_index = count;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            f(maps[static_cast<std::size_t>(omp_get_thread_num())], static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    DeterminationMap out;
    for (const auto& m : maps) out.merge(m);
    return out;
}

}  // namespace fmtk
