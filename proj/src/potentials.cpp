#include "lslab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lslab/rng.hpp"

namespace lslab {

namespace {

double dist3(const Coord& a, const Coord& b, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
    return std::sqrt(s);
}

double norm_of(const Coord& x, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += x[d] * x[d];
    return std::sqrt(s);
}

// 3-point Gauss-Legendre on [-1,1].
constexpr double kGlNode = 0.7745966692414834;   // sqrt(3/5)
constexpr double kGlW0 = 8.0 / 9.0;
constexpr double kGlW1 = 5.0 / 9.0;

double gl3_box_abs_pow(const Coord& lo, const Coord& hi, double alpha, int dim) {
    const double nodes[3] = {-kGlNode, 0.0, kGlNode};
    const double weights[3] = {kGlW1, kGlW0, kGlW1};
    double total = 0.0;
    int idx[3] = {0, 0, 0};
    while (true) {
        double w = 1.0;
        Coord x{0, 0, 0};
        for (int d = 0; d < dim; ++d) {
            const double mid = 0.5 * (lo[d] + hi[d]);
            const double half = 0.5 * (hi[d] - lo[d]);
            x[d] = mid + half * nodes[idx[d]];
            w *= weights[idx[d]] * half;
        }
        total += w * std::pow(norm_of(x, dim), alpha);
        int d = dim - 1;
        while (d >= 0) {
            if (++idx[d] < 3) break;
            idx[d] = 0;
            --d;
        }
        if (d < 0) break;
    }
    return total;
}

// Recursive cell integral of |x|^alpha; subdivides toward the origin. The
// box at the deepest level contributes O(side^{dim+alpha}) which vanishes
// for alpha > -dim, so dropping it is safe at depth 24.
double adaptive_box_abs_pow(const Coord& lo, const Coord& hi, double alpha, int dim, int depth) {
    bool contains_origin = true;
    double min_dist2 = 0.0, diam2 = 0.0;
    for (int d = 0; d < dim; ++d) {
        if (lo[d] > 0.0 || hi[d] < 0.0) contains_origin = false;
        const double m = std::max({lo[d], -hi[d], 0.0});
        min_dist2 += m * m;
        diam2 += (hi[d] - lo[d]) * (hi[d] - lo[d]);
    }
    if (!contains_origin && min_dist2 >= diam2) return gl3_box_abs_pow(lo, hi, alpha, dim);
    if (depth >= 24) {
        if (contains_origin) return 0.0;
        return gl3_box_abs_pow(lo, hi, alpha, dim);
    }
    double total = 0.0;
    const int parts = 1 << dim;
    for (int s = 0; s < parts; ++s) {
        Coord clo = lo, chi = hi;
        for (int d = 0; d < dim; ++d) {
            const double mid = 0.5 * (lo[d] + hi[d]);
            if (s & (1 << d))
                clo[d] = mid;
            else
                chi[d] = mid;
        }
        total += adaptive_box_abs_pow(clo, chi, alpha, dim, depth + 1);
    }
    return total;
}

} // namespace

double cell_average_abs_pow(const Coord& center, double h, double alpha, int dim) {
    if (dim == 1) {
        // closed form: integral of |t|^alpha over [a,b]
        const double a = center[0] - 0.5 * h, b = center[0] + 0.5 * h;
        double integral;
        auto anti = [&](double t) { return std::copysign(std::pow(std::abs(t), alpha + 1.0), t) / (alpha + 1.0); };
        if (a >= 0.0 || b <= 0.0)
            integral = std::abs(anti(b) - anti(a));
        else
            integral = (std::pow(-a, alpha + 1.0) + std::pow(b, alpha + 1.0)) / (alpha + 1.0);
        return integral / h;
    }
    Coord lo = center, hi = center;
    double vol = 1.0;
    for (int d = 0; d < dim; ++d) {
        lo[d] -= 0.5 * h;
        hi[d] += 0.5 * h;
        vol *= h;
    }
    return adaptive_box_abs_pow(lo, hi, alpha, dim, 0) / vol;
}

ScalarField generate_potential(const PotentialSpec& spec, const Grid& grid) {
    ScalarField f(grid);
    const long n = grid.node_count();
    switch (spec.kind) {
        case PotentialKind::constant:
            for (long i = 0; i < n; ++i) f[i] = spec.constant_value;
            break;
        case PotentialKind::power: {
            const double alpha = spec.power_alpha;
            if (alpha <= -2.0)
                throw std::invalid_argument("generate_potential: power alpha <= -2 is not integrable");
            for (long i = 0; i < n; ++i) {
                const Coord x = grid.coord(i);
                bool singular_cell = alpha < 0.0;
                for (int d = 0; d < grid.dim && singular_cell; ++d)
                    if (std::abs(x[d]) > 0.5 * grid.h) singular_cell = false;
                f[i] = singular_cell ? cell_average_abs_pow(x, grid.h, alpha, grid.dim)
                                     : std::pow(norm_of(x, grid.dim), alpha);
            }
            break;
        }
        case PotentialKind::polynomial:
            for (long i = 0; i < n; ++i) {
                const Coord x = grid.coord(i);
                f[i] = std::pow(std::abs(spec.poly.eval({x[0], x[1], x[2]})), spec.poly_alpha);
            }
            break;
        case PotentialKind::well:
            for (long i = 0; i < n; ++i) {
                const double d = dist3(grid.coord(i), spec.well_center, grid.dim);
                f[i] = d <= spec.well_radius ? spec.well_inside : spec.well_outside;
            }
            break;
        case PotentialKind::double_well:
            for (long i = 0; i < n; ++i) {
                const Coord x = grid.coord(i);
                const bool in1 = dist3(x, spec.well_center, grid.dim) <= spec.well_radius;
                const bool in2 = dist3(x, spec.well_center2, grid.dim) <= spec.well_radius;
                f[i] = (in1 || in2) ? spec.well_inside : spec.well_outside;
            }
            break;
        case PotentialKind::exp_decay:
            for (long i = 0; i < n; ++i)
                f[i] = spec.exp_amp * std::exp(-norm_of(grid.coord(i), grid.dim)) + spec.exp_offset;
            break;
        case PotentialKind::random_uniform: {
            Rng rng(spec.seed);
            for (long i = 0; i < n; ++i) f[i] = rng.uniform(spec.random_lo, spec.random_hi);
            break;
        }
        case PotentialKind::table: {
            ScalarField t = read_field_csv(spec.table_path);
            if (!(t.grid == grid))
                throw std::invalid_argument("generate_potential: table grid mismatch");
            f = std::move(t);
            break;
        }
    }
    if (!f.all_finite()) throw std::runtime_error("generate_potential: non-finite values");
    return f;
}

Coord eval_vector_potential(const VectorPotentialSpec& spec, const Coord& x_in) {
    const Coord x = spec.rotation.apply(x_in);
    Coord a{0, 0, 0};
    switch (spec.kind) {
        case VectorPotentialKind::none:
            break;
        case VectorPotentialKind::constant_field: {
            // symmetric gauge a_j = (1/2) sum_k b_jk x_k
            const double b[3][3] = {{0, spec.b12, spec.b13},
                                    {-spec.b12, 0, spec.b23},
                                    {-spec.b13, -spec.b23, 0}};
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) a[j] += 0.5 * b[j][k] * x[k];
            break;
        }
        case VectorPotentialKind::example1: {
            const double alpha = spec.example1_alpha;
            for (int j = 0; j < 3; ++j) {
                const double t = x[(j + 1) % 3];
                a[j] = std::copysign(std::pow(std::abs(t), alpha), t);
            }
            break;
        }
        case VectorPotentialKind::table:
            throw std::invalid_argument("eval_vector_potential: table kind has no pointwise form");
    }
    return spec.rotation.apply_transpose(a);
}

namespace {

// Cell average of alpha |t|^{alpha-1} over [c-h/2, c+h/2]; closed form
// (|a|^alpha + |b|^alpha)/h when the cell straddles 0.
double cell_avg_abs_pow_deriv(double c, double h, double alpha) {
    const double a = c - 0.5 * h, b = c + 0.5 * h;
    if (a >= 0.0 || b <= 0.0)
        return std::abs(std::copysign(std::pow(std::abs(b), alpha), b) -
                        std::copysign(std::pow(std::abs(a), alpha), a)) /
               h;
    return (std::pow(-a, alpha) + std::pow(b, alpha)) / h;
}

} // namespace

AntisymmetricField sample_magnetic_field(const VectorPotentialSpec& spec, const Grid& grid) {
    AntisymmetricField B(grid);
    const long n = grid.node_count();
    switch (spec.kind) {
        case VectorPotentialKind::none:
            break;
        case VectorPotentialKind::constant_field: {
            // constant under rotation: B' = Q^T B Q
            const double b[3][3] = {{0, spec.b12, spec.b13},
                                    {-spec.b12, 0, spec.b23},
                                    {-spec.b13, -spec.b23, 0}};
            double br[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
            const Mat3& q = spec.rotation.q;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) br[i][j] += q[k][i] * b[k][l] * q[l][j];
            for (const auto& [j, k] : AntisymmetricField::pair_list(grid.dim)) {
                auto& comp = B.upper[AntisymmetricField::pair_slot(j, k, grid.dim)];
                for (long f = 0; f < n; ++f) comp[f] = br[j][k];
            }
            break;
        }
        case VectorPotentialKind::example1: {
            if (grid.dim != 3)
                throw std::invalid_argument("sample_magnetic_field: example1 requires dim = 3");
            const double alpha = spec.example1_alpha;
            if (!spec.rotation.is_identity) {
                // rotated: evaluate b^theta = Q^T B(Qx) Q from the analytic entries
                for (long f = 0; f < n; ++f) {
                    const Coord y = spec.rotation.apply(grid.coord(f));
                    double b[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
                    for (int j = 0; j < 3; ++j) {
                        const int jp = (j + 1) % 3;
                        const double t = std::abs(y[jp]);
                        const double v = alpha * (t <= 0.5 * grid.h
                                                      ? cell_avg_abs_pow_deriv(y[jp], grid.h, alpha) / alpha
                                                      : std::pow(t, alpha - 1.0));
                        b[j][jp] += v;
                        b[jp][j] -= v;
                    }
                    const Mat3& q = spec.rotation.q;
                    for (const auto& [j, k] : AntisymmetricField::pair_list(3)) {
                        double v = 0.0;
                        for (int p = 0; p < 3; ++p)
                            for (int l = 0; l < 3; ++l) v += q[p][j] * b[p][l] * q[l][k];
                        B.set_entry(f, j, k, v);
                    }
                }
                break;
            }
            for (long f = 0; f < n; ++f) {
                const Coord x = grid.coord(f);
                for (int j = 0; j < 3; ++j) {
                    const int jp = (j + 1) % 3;
                    const double c = x[jp];
                    const double v = std::abs(c) <= 0.5 * grid.h
                                         ? cell_avg_abs_pow_deriv(c, grid.h, alpha)
                                         : alpha * std::pow(std::abs(c), alpha - 1.0);
                    B.set_entry(f, j, jp, v);
                }
            }
            break;
        }
        case VectorPotentialKind::table:
            throw std::invalid_argument("sample_magnetic_field: table kind has no analytic field");
    }
    return B;
}

Example1Field generate_example1_field(double alpha, const Grid& grid) {
    if (grid.dim != 3) throw std::invalid_argument("generate_example1_field: dim must be 3");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("generate_example1_field: alpha must lie in (0,1)");
    VectorPotentialSpec spec;
    spec.kind = VectorPotentialKind::example1;
    spec.example1_alpha = alpha;

    Example1Field out{.a = {ScalarField(grid), ScalarField(grid), ScalarField(grid)},
                      .B = sample_magnetic_field(spec, grid)};
    const long n = grid.node_count();
    for (long f = 0; f < n; ++f) {
        const Coord a = eval_vector_potential(spec, grid.coord(f));
        for (int j = 0; j < 3; ++j) out.a[j][f] = a[j];
    }
    return out;
}

namespace {

// Random interior center whose distance to every box face is >= margin.
bool sample_center(const Grid& g, Rng& rng, double margin, Coord& out) {
    const Coord lo = g.min_corner(), hi = g.max_corner();
    for (int d = 0; d < g.dim; ++d)
        if (hi[d] - lo[d] < 2.0 * margin + g.h) return false;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Index3 idx{0, 0, 0};
        for (int d = 0; d < g.dim; ++d)
            idx[d] = static_cast<int>(rng.uniform_int(0, g.shape[d] - 1));
        const Coord x = g.coord(idx);
        if (g.distance_to_box_face(x) >= margin) {
            out = x;
            return true;
        }
    }
    return false;
}

} // namespace

RegularityReport check_reverse_holder(const ScalarField& field, double q, int sample_balls,
                                      std::uint64_t seed) {
    if (field.min_value() < 0.0)
        throw std::invalid_argument("check_reverse_holder: field must be nonnegative");
    const Grid& g = field.grid;
    ScalarField powq(g);
    const long n = g.node_count();
    for (long i = 0; i < n; ++i) powq[i] = std::pow(field[i], q);

    Rng rng(seed);
    double worst = 0.0;
    const Coord lo = g.min_corner(), hi = g.max_corner();
    double max_r = 0.5 * (hi[0] - lo[0]);
    for (int d = 1; d < g.dim; ++d) max_r = std::min(max_r, 0.5 * (hi[d] - lo[d]));
    for (int s = 0; s < sample_balls; ++s) {
        Coord c;
        if (!sample_center(g, rng, 2.0 * g.h, c)) break;
        const double r = rng.uniform(2.0 * g.h, std::max(2.0 * g.h, std::min(max_r, g.distance_to_box_face(c))));
        const double mean = ball_average(field, c, r);
        const double mean_q = ball_average(powq, c, r);
        if (mean <= 0.0) {
            if (mean_q > 0.0) {
                worst = std::numeric_limits<double>::infinity();
                break;
            }
            continue;
        }
        worst = std::max(worst, std::pow(mean_q, 1.0 / q) / mean);
    }
    RegularityReport rep;
    rep.rh_q = q;
    rep.rh_characteristic = worst;
    rep.samples = sample_balls;
    rep.seed = seed;
    return rep;
}

RegularityReport check_kato_and_doubling(const ScalarField& field, int samples,
                                         std::uint64_t seed) {
    if (field.min_value() < 0.0)
        throw std::invalid_argument("check_kato_and_doubling: field must be nonnegative");
    const Grid& g = field.grid;
    const int n_exp = g.dim;   // mass-scaling exponent of the volume
    const double h = g.h;

    Rng rng(seed);
    struct CenterData {
        std::vector<double> radii;
        std::vector<double> masses;     // h^n-weighted ball integrals
        std::vector<double> averages;   // count-normalized ball means
    };
    std::vector<CenterData> centers;
    for (int s = 0; s < samples; ++s) {
        Coord c;
        if (!sample_center(g, rng, 4.0 * h, c)) break;
        CenterData cd;
        const double cap = g.distance_to_box_face(c);
        for (double r = 2.0 * h; r <= cap * (1.0 + 1e-12); r *= 2.0) {
            const BallSum b = ball_integral(field, c, r);
            if (b.count == 0) break;
            cd.radii.push_back(r);
            cd.masses.push_back(b.integral);
            cd.averages.push_back(b.integral / (static_cast<double>(b.count) * g.cell_volume()));
        }
        if (cd.radii.size() >= 2) centers.push_back(std::move(cd));
    }

    RegularityReport rep;
    rep.samples = samples;
    rep.seed = seed;
    if (centers.empty()) return rep;

    const double c0_cap = 1e3;
    // largest delta on the ladder whose envelope constant stays moderate
    double delta_fit = 0.0, c0_fit = std::numeric_limits<double>::infinity();
    for (double delta = 2.0; delta >= 0.049; delta -= 0.05) {
        double envelope = 1.0;
        for (const auto& cd : centers)
            for (std::size_t i = 0; i + 1 < cd.radii.size(); ++i)
                for (std::size_t j = i + 1; j < cd.radii.size(); ++j) {
                    if (cd.masses[j] <= 0.0) continue;
                    const double ratio = cd.masses[i] / cd.masses[j];
                    const double scale = std::pow(cd.radii[i] / cd.radii[j],
                                                  static_cast<double>(n_exp - 2) + delta);
                    envelope = std::max(envelope, ratio / scale);
                }
        if (envelope <= c0_cap) {
            delta_fit = delta;
            c0_fit = envelope;
            break;
        }
    }
    rep.kato_delta = delta_fit;
    rep.kato_C0 = c0_fit;

    double c1 = 1.0;
    for (const auto& cd : centers)
        for (std::size_t i = 0; i + 1 < cd.radii.size(); ++i) {
            const double slack = std::pow(cd.radii[i], static_cast<double>(n_exp - 2));
            c1 = std::max(c1, cd.masses[i + 1] / (cd.masses[i] + slack));
        }
    rep.doubling_C1 = c1;

    // smallest local mass-scaling exponent across the finest shell pair
    double min_slope = std::numeric_limits<double>::infinity();
    for (const auto& cd : centers) {
        if (cd.radii.size() < 2) continue;
        if (cd.averages[0] <= 0.0 || cd.averages[1] <= 0.0) continue;
        const double slope = static_cast<double>(n_exp) +
                             std::log(cd.averages[1] / cd.averages[0]) / std::log(2.0);
        min_slope = std::min(min_slope, slope);
    }
    if (std::isfinite(min_slope))
        rep.fine_exponent_deficit =
            std::max(0.0, (static_cast<double>(n_exp - 2) + delta_fit) - min_slope);

    rep.is_shen = delta_fit >= 0.1 && c0_fit <= c0_cap && c1 <= c0_cap;
    return rep;
}

ShenClassification classify_shen_potential(const PotentialSpec& spec, const Grid& grid,
                                           int samples, std::uint64_t seed) {
    ShenClassification out;
    out.coarse = check_kato_and_doubling(generate_potential(spec, grid), samples, seed);

    Grid fine = grid;
    fine.h = 0.5 * grid.h;
    for (int d = 0; d < grid.dim; ++d) fine.shape[d] = 2 * grid.shape[d] - 1;
    out.fine = check_kato_and_doubling(generate_potential(spec, fine), samples, seed);

    out.deficit_contracts = out.fine.fine_exponent_deficit <=
                            std::max(0.02, 0.7 * out.coarse.fine_exponent_deficit);
    out.is_shen = out.coarse.is_shen && out.fine.is_shen && out.deficit_contracts;
    return out;
}

} // namespace lslab
