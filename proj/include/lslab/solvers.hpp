#pragma once

#include <complex>
#include <vector>

#include "lslab/operators.hpp"
#include "lslab/sparse.hpp"

namespace lslab {

struct SolveReport {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
    double seconds = 0.0;
    bool fell_back_to_bicgstab = false;
};

/// Jacobi-preconditioned conjugate gradient for symmetric/Hermitian
/// positive definite systems; automatic fallback to BiCGStab when CG meets
/// nonpositive curvature or the matrix is flagged general. Residuals are
/// relative to ||rhs||.
template <class T>
SolveReport solve_linear(const CsrMatrix<T>& M, const std::vector<T>& rhs, std::vector<T>& x,
                         double tol = 1e-10, int max_iter = 0);

extern template SolveReport solve_linear<double>(const CsrMatrix<double>&,
                                                 const std::vector<double>&, std::vector<double>&,
                                                 double, int);
extern template SolveReport solve_linear<std::complex<double>>(
    const CsrMatrix<std::complex<double>>&, const std::vector<std::complex<double>>&,
    std::vector<std::complex<double>>&, double, int);

template <class T>
struct SpectrumResult {
    std::vector<double> eigenvalues;            // ascending
    std::vector<std::vector<T>> eigenvectors;   // unit L2 norm under h^n weighting when
                                                // normalized via set_grid_norm
    std::vector<double> residuals;              // ||Mv - mu v|| / ||v||
    bool converged = false;
    int lanczos_steps = 0;
};

/// k smallest eigenpairs of a symmetric/Hermitian operator. Dense
/// decomposition for small problems, otherwise shift-invert Lanczos with
/// full reorthogonalization (inner CG solves), which handles the clustered
/// low end of Schroedinger spectra. Residuals are verified against M.
template <class T>
SpectrumResult<T> lowest_eigenpairs(const CsrMatrix<T>& M, int k, double tol = 1e-8,
                                    int max_subspace = 0);

extern template SpectrumResult<double> lowest_eigenpairs<double>(const CsrMatrix<double>&, int,
                                                                 double, int);
extern template SpectrumResult<std::complex<double>> lowest_eigenpairs<std::complex<double>>(
    const CsrMatrix<std::complex<double>>&, int, double, int);

/// Normalizes eigenvectors to unit L2 norm under the h^n quadrature weight.
template <class T>
void normalize_spectrum(SpectrumResult<T>& s, double cell_volume);

/// Discrete Green column: solves M g = h^{-n} e_source so that g
/// approximates the continuum kernel column G(., y0).
ScalarField green_column(const AssembledReal& op, long source_node, double tol = 1e-10,
                         SolveReport* report = nullptr);
std::vector<std::complex<double>> green_column(const AssembledMagnetic& op, long source_node,
                                               double tol = 1e-10, SolveReport* report = nullptr);

/// Resolvent application x = (I + t^2 M)^{-1} f; contractive in L2 for
/// M from assemble_real with V >= 0.
std::vector<double> apply_resolvent(const CsrMatrix<double>& M, double t,
                                    const std::vector<double>& f, double tol = 1e-10,
                                    SolveReport* report = nullptr);

} // namespace lslab
