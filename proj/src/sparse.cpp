#include "lslab/sparse.hpp"

#include <cstdio>
#include <fstream>

namespace lslab {

namespace {

const char* mm_symmetry(Symmetry s, bool complex_valued) {
    switch (s) {
        case Symmetry::symmetric: return "symmetric";
        case Symmetry::hermitian: return complex_valued ? "hermitian" : "symmetric";
        default: return "general";
    }
}

} // namespace

void write_matrix_market(const std::string& path, const CsrMatrix<double>& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
    // Symmetric storage keeps the lower triangle only, per the format.
    const bool lower_only = m.sym != Symmetry::general;
    long count = 0;
    for (int r = 0; r < m.n; ++r)
        for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
            if (!lower_only || m.col[k] <= r) ++count;
    out << "%%MatrixMarket matrix coordinate real " << mm_symmetry(m.sym, false) << "\n";
    out << m.n << " " << m.n << " " << count << "\n";
    char buf[96];
    for (int r = 0; r < m.n; ++r)
        for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
            if (lower_only && m.col[k] > r) continue;
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, m.col[k] + 1, m.val[k]);
            out << buf;
        }
}

void write_matrix_market(const std::string& path, const CsrMatrix<std::complex<double>>& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
    const bool lower_only = m.sym != Symmetry::general;
    long count = 0;
    for (int r = 0; r < m.n; ++r)
        for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
            if (!lower_only || m.col[k] <= r) ++count;
    out << "%%MatrixMarket matrix coordinate complex " << mm_symmetry(m.sym, true) << "\n";
    out << m.n << " " << m.n << " " << count << "\n";
    char buf[128];
    for (int r = 0; r < m.n; ++r)
        for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
            if (lower_only && m.col[k] > r) continue;
            std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", r + 1, m.col[k] + 1,
                          m.val[k].real(), m.val[k].imag());
            out << buf;
        }
}

} // namespace lslab
