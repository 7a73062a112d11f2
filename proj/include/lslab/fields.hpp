#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lslab/grid.hpp"

namespace lslab {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 identity3() {
    return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

/// Orthonormal change of coordinates applied to vector potentials and
/// magnetic fields before sampling.
struct Rotation {
    Mat3 q = identity3();
    bool is_identity = true;

    Coord apply(const Coord& x) const;
    Coord apply_transpose(const Coord& x) const;
    /// Validates Q^T Q = I to 1e-10.
    static Rotation from_matrix(const Mat3& q);
};

/// Coefficient matrix A(x) with its ellipticity constant lambda in (0,1]:
/// lambda |xi|^2 <= xi^T A xi and ||A|| <= 1/lambda at every node. A constant
/// matrix covers all bundled instances; a per-node table is available for
/// stress tests.
struct MatrixField {
    bool is_identity = true;
    Mat3 constant = identity3();
    std::optional<std::vector<Mat3>> per_node;   // indexed by flat node id
    double lambda = 1.0;

    static MatrixField identity() { return MatrixField{}; }
    static MatrixField constant_matrix(const Mat3& a, double lambda);

    Mat3 at(long node) const {
        if (per_node) return (*per_node)[static_cast<std::size_t>(node)];
        return constant;
    }
    bool symmetric_everywhere(long node_count) const;
};

/// Antisymmetric matrix field B(x); the independent entries b_jk with
/// j < k are stored, the rest follow from b_kj = -b_jk.
struct AntisymmetricField {
    Grid grid;
    std::vector<ScalarField> upper;   // pair order (0,1), (0,2), (1,2)

    AntisymmetricField() = default;
    explicit AntisymmetricField(const Grid& g);

    static int pair_count(int dim) { return dim * (dim - 1) / 2; }
    static std::vector<std::pair<int, int>> pair_list(int dim);
    /// Index into `upper` for the unordered pair {j,k}.
    static int pair_slot(int j, int k, int dim);

    double entry(long node, int j, int k) const;
    void set_entry(long node, int j, int k, double value);

    /// |B|(x) = sum_{j<k} |b_jk(x)|.
    ScalarField abs_field() const;
    /// max over nodes and pairs of |b_jk|.
    double max_abs() const;
};

} // namespace lslab
