#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lslab {

using Coord = std::array<double, 3>;
using Index3 = std::array<int, 3>;

/// Uniform rectangular node lattice in 1, 2 or 3 dimensions.
///
/// Nodes are indexed per axis; the flat index runs with the LAST axis
/// fastest (row-major), which is also the serialization order. Spacing is
/// the same along every axis; anisotropic boxes come from the shape.
/// Boundary nodes are exactly those with some per-axis index at 0 or
/// shape[d]-1, and carry homogeneous Dirichlet data in the assembled
/// operators.
struct Grid {
    int dim = 3;
    Index3 shape{3, 3, 3};   // node counts; unused trailing axes are 1
    double h = 1.0;
    Coord origin{0.0, 0.0, 0.0};

    Grid() = default;
    Grid(int dim_, Index3 shape_, double h_, Coord origin_);

    /// Box [center-half_width, center+half_width]^dim with the given spacing.
    /// half_width must be a multiple of h for nodes to land on the faces.
    static Grid centered_box(int dim, double half_width, double h, Coord center = {0, 0, 0});

    long node_count() const {
        long n = 1;
        for (int d = 0; d < dim; ++d) n *= shape[d];
        return n;
    }
    long interior_count() const {
        long n = 1;
        for (int d = 0; d < dim; ++d) n *= (shape[d] - 2);
        return n;
    }

    long flat(const Index3& idx) const {
        long f = idx[0];
        for (int d = 1; d < dim; ++d) f = f * shape[d] + idx[d];
        return f;
    }
    Index3 unflat(long f) const {
        Index3 idx{0, 0, 0};
        for (int d = dim - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(f % shape[d]);
            f /= shape[d];
        }
        return idx;
    }

    Coord coord(const Index3& idx) const {
        Coord x{0, 0, 0};
        for (int d = 0; d < dim; ++d) x[d] = origin[d] + h * idx[d];
        return x;
    }
    Coord coord(long f) const { return coord(unflat(f)); }

    bool is_boundary(const Index3& idx) const {
        for (int d = 0; d < dim; ++d)
            if (idx[d] == 0 || idx[d] == shape[d] - 1) return true;
        return false;
    }
    bool is_boundary(long f) const { return is_boundary(unflat(f)); }

    bool contains(const Index3& idx) const {
        for (int d = 0; d < dim; ++d)
            if (idx[d] < 0 || idx[d] >= shape[d]) return false;
        return true;
    }

    Coord min_corner() const { return origin; }
    Coord max_corner() const {
        Coord x = origin;
        for (int d = 0; d < dim; ++d) x[d] += h * (shape[d] - 1);
        return x;
    }

    /// Smallest distance from the point to a face of the bounding box.
    double distance_to_box_face(const Coord& x) const;

    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= h;
        return v;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && shape == o.shape && h == o.h && origin == o.origin;
    }
};

/// One real value per grid node, stored in flat-index order.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.node_count()), fill) {}

    double& operator[](long f) { return values[static_cast<std::size_t>(f)]; }
    double operator[](long f) const { return values[static_cast<std::size_t>(f)]; }

    bool all_finite() const;
    double min_value() const;
    double max_value() const;
    double min_interior() const;
};

/// Axis-aligned box region for quadrature.
struct Box {
    Coord lo{0, 0, 0};
    Coord hi{0, 0, 0};
};

struct BoxIntegral {
    double value = 0.0;
    bool empty = false;   // region met no nodes; value is 0
};

/// Midpoint-rule integral of the field over the box. Nodes lying on a box
/// face get weight 1/2 per clipped axis, so that integrating a constant
/// over a node-aligned box is exact.
BoxIntegral integrate(const ScalarField& field, const Box& region);

struct BallSum {
    double integral = 0.0;   // h^n * sum of values over nodes with |x-c| <= r
    long count = 0;
};

/// Node-counting ball quadrature: strict Euclidean membership on node
/// coordinates, ties (|x-c| == r) included for reproducibility.
BallSum ball_integral(const ScalarField& field, const Coord& center, double radius);

/// Mean of the node values in the ball; throws "ball below resolution"
/// when no node qualifies.
double ball_average(const ScalarField& field, const Coord& center, double radius);

/// Ordered (node, +axis neighbor) pairs: every interior-adjacent pair once.
struct EdgeSet {
    Grid grid;
    std::vector<std::pair<long, long>> edges;
};
EdgeSet make_edge_set(const Grid& grid);

/// Field serialization: "# grid dim=.. shape=.. h=.. origin=.. field=.."
/// header, then one line per node (index columns, then value), last axis
/// fastest.
void write_field_csv(const std::string& path, const ScalarField& field,
                     const std::string& name,
                     const std::vector<std::pair<std::string, std::string>>& extra = {});
ScalarField read_field_csv(const std::string& path);

} // namespace lslab
