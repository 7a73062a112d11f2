#include "lslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lslab {

Grid::Grid(int dim_, Index3 shape_, double h_, Coord origin_)
    : dim(dim_), shape(shape_), h(h_), origin(origin_) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1, 2 or 3");
    if (!(h > 0.0)) throw std::invalid_argument("Grid: spacing must be positive");
    for (int d = dim; d < 3; ++d) shape[d] = 1;
    for (int d = 0; d < dim; ++d)
        if (shape[d] < 3) throw std::invalid_argument("Grid: shape must be >= 3 per axis");
}

Grid Grid::centered_box(int dim, double half_width, double h, Coord center) {
    const double cells = half_width / h;
    const long m = std::lround(cells);
    if (std::abs(cells - static_cast<double>(m)) > 1e-9 || m < 1)
        throw std::invalid_argument("Grid: half_width must be a positive multiple of h");
    Index3 shape{1, 1, 1};
    Coord origin{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
        shape[d] = static_cast<int>(2 * m + 1);
        origin[d] = center[d] - h * static_cast<double>(m);
    }
    return Grid(dim, shape, h, origin);
}

double Grid::distance_to_box_face(const Coord& x) const {
    double dist = std::numeric_limits<double>::max();
    const Coord lo = min_corner(), hi = max_corner();
    for (int d = 0; d < dim; ++d) {
        dist = std::min(dist, x[d] - lo[d]);
        dist = std::min(dist, hi[d] - x[d]);
    }
    return dist;
}

bool ScalarField::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

double ScalarField::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double ScalarField::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double ScalarField::min_interior() const {
    double m = std::numeric_limits<double>::max();
    const long n = grid.node_count();
    for (long f = 0; f < n; ++f)
        if (!grid.is_boundary(f)) m = std::min(m, values[static_cast<std::size_t>(f)]);
    return m;
}

BoxIntegral integrate(const ScalarField& field, const Box& region) {
    const Grid& g = field.grid;
    const double eps = 1e-9 * g.h;

    // Per-axis index ranges covered by the region.
    Index3 i_lo{0, 0, 0}, i_hi{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
        const double a = (region.lo[d] - g.origin[d]) / g.h;
        const double b = (region.hi[d] - g.origin[d]) / g.h;
        i_lo[d] = std::max(0, static_cast<int>(std::ceil(a - 1e-9)));
        i_hi[d] = std::min(g.shape[d] - 1, static_cast<int>(std::floor(b + 1e-9)));
        if (i_lo[d] > i_hi[d]) return {0.0, true};
    }

    double sum = 0.0;
    Index3 idx = i_lo;
    bool any = false;
    while (true) {
        const Coord x = field.grid.coord(idx);
        double w = 1.0;
        for (int d = 0; d < g.dim; ++d) {
            if (std::abs(x[d] - region.lo[d]) <= eps || std::abs(x[d] - region.hi[d]) <= eps)
                w *= 0.5;
        }
        sum += w * field[g.flat(idx)];
        any = true;

        int d = g.dim - 1;
        while (d >= 0) {
            if (++idx[d] <= i_hi[d]) break;
            idx[d] = i_lo[d];
            --d;
        }
        if (d < 0) break;
    }
    if (!any) return {0.0, true};
    return {sum * field.grid.cell_volume(), false};
}

BallSum ball_integral(const ScalarField& field, const Coord& center, double radius) {
    const Grid& g = field.grid;
    const double r2 = radius * radius;

    Index3 i_lo{0, 0, 0}, i_hi{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
        const double a = (center[d] - radius - g.origin[d]) / g.h;
        const double b = (center[d] + radius - g.origin[d]) / g.h;
        i_lo[d] = std::max(0, static_cast<int>(std::ceil(a - 1e-12)));
        i_hi[d] = std::min(g.shape[d] - 1, static_cast<int>(std::floor(b + 1e-12)));
        if (i_lo[d] > i_hi[d]) return {0.0, 0};
    }

    double sum = 0.0;
    long count = 0;
    Index3 idx = i_lo;
    while (true) {
        double d2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double dx = g.origin[d] + g.h * idx[d] - center[d];
            d2 += dx * dx;
        }
        if (d2 <= r2) {
            sum += field[g.flat(idx)];
            ++count;
        }
        int d = g.dim - 1;
        while (d >= 0) {
            if (++idx[d] <= i_hi[d]) break;
            idx[d] = i_lo[d];
            --d;
        }
        if (d < 0) break;
    }
    return {sum * g.cell_volume(), count};
}

double ball_average(const ScalarField& field, const Coord& center, double radius) {
    const BallSum s = ball_integral(field, center, radius);
    if (s.count == 0) throw std::runtime_error("ball_average: ball below resolution");
    return s.integral / (static_cast<double>(s.count) * field.grid.cell_volume());
}

EdgeSet make_edge_set(const Grid& grid) {
    EdgeSet es;
    es.grid = grid;
    const long n = grid.node_count();
    for (long f = 0; f < n; ++f) {
        const Index3 idx = grid.unflat(f);
        for (int d = 0; d < grid.dim; ++d) {
            Index3 nb = idx;
            ++nb[d];
            if (nb[d] < grid.shape[d]) es.edges.emplace_back(f, grid.flat(nb));
        }
    }
    return es;
}

void write_field_csv(const std::string& path, const ScalarField& field,
                     const std::string& name,
                     const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
    const Grid& g = field.grid;
    out << "# grid dim=" << g.dim << " shape=";
    for (int d = 0; d < g.dim; ++d) out << (d ? "," : "") << g.shape[d];
    out << " h=" << g.h << " origin=";
    for (int d = 0; d < g.dim; ++d) out << (d ? "," : "") << g.origin[d];
    out << " field=" << name;
    for (const auto& [k, v] : extra) out << " " << k << "=" << v;
    out << "\n";
    char buf[64];
    const long n = g.node_count();
    for (long f = 0; f < n; ++f) {
        const Index3 idx = g.unflat(f);
        for (int d = 0; d < g.dim; ++d) out << idx[d] << ",";
        std::snprintf(buf, sizeof buf, "%.17g", field[f]);
        out << buf << "\n";
    }
}

ScalarField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field_csv: cannot open " + path);
    std::string header;
    std::getline(in, header);
    if (header.rfind("# grid", 0) != 0)
        throw std::runtime_error("read_field_csv: missing grid header in " + path);

    auto field_of = [&](const std::string& key) -> std::string {
        const auto pos = header.find(key + "=");
        if (pos == std::string::npos)
            throw std::runtime_error("read_field_csv: header missing " + key);
        const auto start = pos + key.size() + 1;
        const auto end = header.find(' ', start);
        return header.substr(start, end == std::string::npos ? end : end - start);
    };

    const int dim = std::stoi(field_of("dim"));
    Index3 shape{1, 1, 1};
    Coord origin{0, 0, 0};
    {
        std::stringstream ss(field_of("shape"));
        std::string tok;
        for (int d = 0; d < dim && std::getline(ss, tok, ','); ++d) shape[d] = std::stoi(tok);
    }
    const double h = std::stod(field_of("h"));
    {
        std::stringstream ss(field_of("origin"));
        std::string tok;
        for (int d = 0; d < dim && std::getline(ss, tok, ','); ++d) origin[d] = std::stod(tok);
    }

    ScalarField f(Grid(dim, shape, h, origin));
    std::string line;
    long rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tok;
        Index3 idx{0, 0, 0};
        for (int d = 0; d < dim; ++d) {
            std::getline(ss, tok, ',');
            idx[d] = std::stoi(tok);
        }
        std::getline(ss, tok, ',');
        f[f.grid.flat(idx)] = std::stod(tok);
        ++rows;
    }
    if (rows != f.grid.node_count())
        throw std::runtime_error("read_field_csv: row count does not match grid");
    return f;
}

} // namespace lslab
