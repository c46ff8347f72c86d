// Shared aliases, constants and small utilities used across the library.
#pragma once

#include <complex>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ssp {

using cplx = std::complex<double>;
using real_fn = std::function<double(double)>;
using cplx_fn = std::function<cplx(double)>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

inline double sq(double x) { return x * x; }
inline double cube(double x) { return x * x * x; }

/// Japanese bracket <x> = sqrt(1+x^2).
inline double jbr(double x) { return std::sqrt(1.0 + x * x); }

inline cplx expi(double phase) { return cplx(std::cos(phase), std::sin(phase)); }

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Number of worker threads: SSPROFILE_THREADS if set, else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("SSPROFILE_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

/// Deterministic parallel map over [0, n): each index writes only its own slot.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned nt = std::min<std::size_t>(thread_budget(), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace ssp
