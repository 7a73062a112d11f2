#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Low-level vector kernels. Each parallel kernel has a serial reference
// twin (suffix _serial) kept for testing and benchmarking. Reductions use
// a fixed chunk schedule: partial sums are formed per 4096-element block
// and combined in block order, so results are bit-identical no matter how
// many threads run.

namespace lslab::kern {

inline constexpr std::size_t kChunk = 4096;

template <class T>
inline double real_part(T v) {
    if constexpr (std::is_same_v<T, std::complex<double>>)
        return v.real();
    else
        return v;
}

template <class T>
inline T conj_if_complex(T v) {
    if constexpr (std::is_same_v<T, std::complex<double>>)
        return std::conj(v);
    else
        return v;
}

/// <x, y> with conjugation on x for complex T. Chunk-ordered reduction.
template <class T>
T dot(std::size_t n, const T* x, const T* y) {
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<T> partial(nchunks, T(0));
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
        T s(0);
        for (std::size_t i = lo; i < hi; ++i) s += conj_if_complex(x[i]) * y[i];
        partial[static_cast<std::size_t>(c)] = s;
    }
    T total(0);
    for (const T& s : partial) total += s;
    return total;
}

/// Plain left-to-right reference sum.
template <class T>
T dot_serial(std::size_t n, const T* x, const T* y) {
    T s(0);
    for (std::size_t i = 0; i < n; ++i) s += conj_if_complex(x[i]) * y[i];
    return s;
}

template <class T>
double norm2(std::size_t n, const T* x) {
    return std::sqrt(real_part(dot(n, x, x)));
}

template <class T>
double norm2_serial(std::size_t n, const T* x) {
    return std::sqrt(real_part(dot_serial(n, x, x)));
}

/// y = alpha*x + beta*y
template <class T, class S>
void axpby(std::size_t n, S alpha, const T* x, S beta, T* y) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        y[i] = alpha * x[i] + beta * y[i];
}

template <class T, class S>
void axpby_serial(std::size_t n, S alpha, const T* x, S beta, T* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

/// y = x (*) d elementwise (Jacobi application).
template <class T>
void hadamard(std::size_t n, const T* x, const double* d, T* y) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] = x[i] * d[i];
}

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace lslab::kern
