#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lslab/fields.hpp"
#include "lslab/grid.hpp"
#include "lslab/potentials.hpp"
#include "lslab/sparse.hpp"

namespace lslab {

/// Mapping between grid nodes and the rows of an operator assembled with
/// homogeneous Dirichlet data (boundary rows eliminated).
struct DirichletMap {
    Grid grid;
    std::vector<int> row_of_node;    // -1 on boundary nodes
    std::vector<long> node_of_row;

    explicit DirichletMap(const Grid& g);

    int rows() const { return static_cast<int>(node_of_row.size()); }

    /// Scatter a row vector into a node field (0 on the boundary).
    ScalarField embed(const std::vector<double>& x) const;
    /// Gather interior node values into a row vector.
    std::vector<double> restrict_field(const ScalarField& f) const;
};

/// Per-edge Peierls phases; theta[axis][node] is the phase on the edge
/// leaving `node` in the +axis direction. Reversing the edge negates it.
struct EdgePhaseField {
    Grid grid;
    std::array<std::vector<double>, 3> theta;

    EdgePhaseField() = default;
    explicit EdgePhaseField(const Grid& g);

    double phase(long node, int axis) const { return theta[axis][static_cast<std::size_t>(node)]; }

    /// Midpoint rule: theta_e = a((x+y)/2) . (y-x).
    static EdgePhaseField from_vector_potential(const VectorPotentialSpec& spec, const Grid& g);
    /// Exact discrete gauge transform: theta'_e = theta_e + Phi(y) - Phi(x),
    /// which conjugates the assembled operator by a diagonal unitary.
    EdgePhaseField gauge_shifted(const ScalarField& phi) const;
};

/// One ordered pair per unordered index pair {j,k}.
struct SelectionOfPairs {
    std::vector<std::pair<int, int>> pairs;

    bool valid(int dim) const;
    /// sum over (j,k) in S of b_jk at the node.
    double sum_at(const AntisymmetricField& B, long node) const;
    ScalarField sum_field(const AntisymmetricField& B) const;
};

struct SelectionScan {
    std::vector<SelectionOfPairs> admissible;
    /// Present when every independent component keeps one sign over the
    /// grid; then the orientation with b >= 0 realizes |B| = Sigma_S B.
    std::optional<SelectionOfPairs> maximal;
    bool strong_directionality = false;
    int candidates = 0;   // 2^{n(n-1)/2}
    double tol_used = 0.0;
};

/// Tests all 2^{n(n-1)/2} selections against min_nodes(Sigma_S B + V) >= -tol.
/// tol defaults to 1e-12 * max|B|.
SelectionScan enumerate_admissible_selections(const AntisymmetricField& B, const ScalarField& V,
                                              std::optional<double> tol = std::nullopt);

struct AssembledReal {
    CsrMatrix<double> M;
    DirichletMap map;
};

struct AssembledMagnetic {
    CsrMatrix<std::complex<double>> M;
    DirichletMap map;
};

/// Flux-form second-order stencil for -div A grad + V with boundary rows
/// eliminated: face-averaged (arithmetic mean) diagonal coefficients,
/// centered differences for off-diagonal A entries, V on the diagonal.
/// For A = I this is the (2n+1)-point Laplacian plus V. Rejects matrices
/// that violate the declared ellipticity constant.
AssembledReal assemble_real(const Grid& grid, const MatrixField& A, const ScalarField& V);

/// Peierls discretization of -(grad - i a)^2 + V: diagonal 2n/h^2 + V,
/// edge entries -exp(i theta_e)/h^2. Hermitian by construction.
AssembledMagnetic assemble_magnetic(const Grid& grid, const EdgePhaseField& phases,
                                    const ScalarField& V);

/// Recovers b_jk = d_k a_j - d_j a_k from plaquette fluxes divided by h^2,
/// assigned at the lower-corner node (clamped on the last row/column).
AntisymmetricField discrete_field_from_phases(const EdgePhaseField& phases);

} // namespace lslab
