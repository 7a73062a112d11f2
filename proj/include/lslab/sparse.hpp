#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lslab {

enum class Symmetry { general, symmetric, hermitian };

/// Compressed sparse row matrix, square. The sparsity pattern is kept
/// symmetric even when the values are not (assembly guarantees this);
/// the symmetry flag describes the values.
template <class T>
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;   // size n+1
    std::vector<int> col;
    std::vector<T> val;
    Symmetry sym = Symmetry::general;

    struct Triplet {
        int r, c;
        T v;
    };

    static CsrMatrix from_triplets(int n, std::vector<Triplet> trips, Symmetry sym) {
        std::sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
            return a.r != b.r ? a.r < b.r : a.c < b.c;
        });
        CsrMatrix m;
        m.n = n;
        m.sym = sym;
        m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
        m.col.reserve(trips.size());
        m.val.reserve(trips.size());
        std::size_t i = 0;
        for (int r = 0; r < n; ++r) {
            while (i < trips.size() && trips[i].r == r) {
                const int c = trips[i].c;
                T v = trips[i].v;
                ++i;
                while (i < trips.size() && trips[i].r == r && trips[i].c == c) {
                    v += trips[i].v;
                    ++i;
                }
                m.col.push_back(c);
                m.val.push_back(v);
            }
            m.row_ptr[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.col.size());
        }
        if (i != trips.size()) throw std::invalid_argument("CsrMatrix: triplet row out of range");
        return m;
    }

    /// y = M x, row-parallel.
    void apply(const T* x, T* y) const {
#pragma omp parallel for schedule(static)
        for (long long r = 0; r < n; ++r) {
            T s(0);
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col[k]];
            y[r] = s;
        }
    }

    void apply_serial(const T* x, T* y) const {
        for (int r = 0; r < n; ++r) {
            T s(0);
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col[k]];
            y[r] = s;
        }
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(static_cast<std::size_t>(n));
        apply(x.data(), y.data());
        return y;
    }

    T diagonal(int r) const {
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
            if (col[k] == r) return val[k];
        return T(0);
    }

    T entry(int r, int c) const {
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
            if (col[k] == c) return val[k];
        return T(0);
    }

    long nnz() const { return static_cast<long>(val.size()); }

    /// max |M - M^*| over the pattern (conjugate transpose mismatch).
    double hermitian_mismatch() const {
        double worst = 0.0;
        for (int r = 0; r < n; ++r)
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
                T other = entry(col[k], r);
                if constexpr (std::is_same_v<T, std::complex<double>>)
                    worst = std::max(worst, std::abs(val[k] - std::conj(other)));
                else
                    worst = std::max(worst, std::abs(val[k] - other));
            }
        return worst;
    }

    /// Infinity norm (max absolute row sum).
    double norm_inf() const {
        double worst = 0.0;
        for (int r = 0; r < n; ++r) {
            double s = 0.0;
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += std::abs(val[k]);
            worst = std::max(worst, s);
        }
        return worst;
    }
};

/// Matrix Market coordinate export for cross-validation with external tools.
void write_matrix_market(const std::string& path, const CsrMatrix<double>& m);
void write_matrix_market(const std::string& path, const CsrMatrix<std::complex<double>>& m);

} // namespace lslab
