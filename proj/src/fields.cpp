#include "lslab/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace lslab {

Coord Rotation::apply(const Coord& x) const {
    if (is_identity) return x;
    Coord y{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] += q[i][j] * x[j];
    return y;
}

Coord Rotation::apply_transpose(const Coord& x) const {
    if (is_identity) return x;
    Coord y{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] += q[j][i] * x[j];
    return y;
}

Rotation Rotation::from_matrix(const Mat3& q) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0.0;
            for (int k = 0; k < 3; ++k) dot += q[k][i] * q[k][j];
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(dot - expect) > 1e-10)
                throw std::invalid_argument("Rotation: matrix is not orthonormal");
        }
    Rotation r;
    r.q = q;
    r.is_identity = true;
    for (int i = 0; i < 3 && r.is_identity; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(q[i][j] - (i == j ? 1.0 : 0.0)) > 0) {
                r.is_identity = false;
                break;
            }
    return r;
}

MatrixField MatrixField::constant_matrix(const Mat3& a, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("MatrixField: lambda must lie in (0,1]");
    MatrixField m;
    m.constant = a;
    m.lambda = lambda;
    m.is_identity = true;
    for (int i = 0; i < 3 && m.is_identity; ++i)
        for (int j = 0; j < 3; ++j)
            if (a[i][j] != (i == j ? 1.0 : 0.0)) {
                m.is_identity = false;
                break;
            }
    return m;
}

bool MatrixField::symmetric_everywhere(long node_count) const {
    if (!per_node) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (constant[i][j] != constant[j][i]) return false;
        return true;
    }
    for (long f = 0; f < node_count; ++f) {
        const Mat3& a = (*per_node)[static_cast<std::size_t>(f)];
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (a[i][j] != a[j][i]) return false;
    }
    return true;
}

AntisymmetricField::AntisymmetricField(const Grid& g) : grid(g) {
    upper.assign(static_cast<std::size_t>(pair_count(g.dim)), ScalarField(g));
}

std::vector<std::pair<int, int>> AntisymmetricField::pair_list(int dim) {
    std::vector<std::pair<int, int>> p;
    for (int j = 0; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) p.emplace_back(j, k);
    return p;
}

int AntisymmetricField::pair_slot(int j, int k, int dim) {
    if (j > k) std::swap(j, k);
    int slot = 0;
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            if (a == j && b == k) return slot;
            ++slot;
        }
    throw std::invalid_argument("AntisymmetricField: bad pair");
}

double AntisymmetricField::entry(long node, int j, int k) const {
    if (j == k) return 0.0;
    const double v = upper[static_cast<std::size_t>(pair_slot(j, k, grid.dim))][node];
    return j < k ? v : -v;
}

void AntisymmetricField::set_entry(long node, int j, int k, double value) {
    if (j == k) {
        if (value != 0.0) throw std::invalid_argument("AntisymmetricField: diagonal must be 0");
        return;
    }
    auto& f = upper[static_cast<std::size_t>(pair_slot(j, k, grid.dim))];
    f[node] = j < k ? value : -value;
}

ScalarField AntisymmetricField::abs_field() const {
    ScalarField out(grid, 0.0);
    const long n = grid.node_count();
    for (const auto& comp : upper)
        for (long f = 0; f < n; ++f) out[f] += std::abs(comp[f]);
    return out;
}

double AntisymmetricField::max_abs() const {
    double worst = 0.0;
    for (const auto& comp : upper)
        for (double v : comp.values) worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace lslab
