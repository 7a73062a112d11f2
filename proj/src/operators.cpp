#include "lslab/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace lslab {

DirichletMap::DirichletMap(const Grid& g) : grid(g) {
    const long n = g.node_count();
    row_of_node.assign(static_cast<std::size_t>(n), -1);
    node_of_row.reserve(static_cast<std::size_t>(g.interior_count()));
    for (long f = 0; f < n; ++f) {
        if (g.is_boundary(f)) continue;
        row_of_node[static_cast<std::size_t>(f)] = static_cast<int>(node_of_row.size());
        node_of_row.push_back(f);
    }
}

ScalarField DirichletMap::embed(const std::vector<double>& x) const {
    ScalarField f(grid, 0.0);
    for (std::size_t r = 0; r < node_of_row.size(); ++r) f[node_of_row[r]] = x[r];
    return f;
}

std::vector<double> DirichletMap::restrict_field(const ScalarField& f) const {
    std::vector<double> x(node_of_row.size());
    for (std::size_t r = 0; r < node_of_row.size(); ++r) x[r] = f[node_of_row[r]];
    return x;
}

EdgePhaseField::EdgePhaseField(const Grid& g) : grid(g) {
    for (int d = 0; d < g.dim; ++d)
        theta[d].assign(static_cast<std::size_t>(g.node_count()), 0.0);
}

EdgePhaseField EdgePhaseField::from_vector_potential(const VectorPotentialSpec& spec,
                                                     const Grid& g) {
    EdgePhaseField p(g);
    if (spec.kind == VectorPotentialKind::none) return p;

    if (spec.kind == VectorPotentialKind::table) {
        std::array<ScalarField, 3> a;
        for (int d = 0; d < g.dim; ++d) {
            a[d] = read_field_csv(spec.table_paths[d]);
            if (!(a[d].grid == g))
                throw std::invalid_argument("EdgePhaseField: table grid mismatch");
        }
        const long n = g.node_count();
        for (long f = 0; f < n; ++f) {
            const Index3 idx = g.unflat(f);
            for (int d = 0; d < g.dim; ++d) {
                Index3 nb = idx;
                ++nb[d];
                if (nb[d] >= g.shape[d]) continue;
                p.theta[d][f] = 0.5 * (a[d][f] + a[d][g.flat(nb)]) * g.h;
            }
        }
        return p;
    }

    const long n = g.node_count();
    for (long f = 0; f < n; ++f) {
        const Index3 idx = g.unflat(f);
        const Coord x = g.coord(idx);
        for (int d = 0; d < g.dim; ++d) {
            if (idx[d] + 1 >= g.shape[d]) continue;
            Coord mid = x;
            mid[d] += 0.5 * g.h;
            p.theta[d][f] = eval_vector_potential(spec, mid)[d] * g.h;
        }
    }
    for (int d = 0; d < g.dim; ++d)
        for (double t : p.theta[d])
            if (!std::isfinite(t)) throw std::runtime_error("EdgePhaseField: non-finite phase");
    return p;
}

EdgePhaseField EdgePhaseField::gauge_shifted(const ScalarField& phi) const {
    if (!(phi.grid == grid)) throw std::invalid_argument("gauge_shifted: grid mismatch");
    EdgePhaseField p(grid);
    const long n = grid.node_count();
    for (long f = 0; f < n; ++f) {
        const Index3 idx = grid.unflat(f);
        for (int d = 0; d < grid.dim; ++d) {
            Index3 nb = idx;
            ++nb[d];
            if (nb[d] >= grid.shape[d]) continue;
            p.theta[d][f] = theta[d][f] + phi[grid.flat(nb)] - phi[f];
        }
    }
    return p;
}

bool SelectionOfPairs::valid(int dim) const {
    const auto unordered = AntisymmetricField::pair_list(dim);
    if (pairs.size() != unordered.size()) return false;
    for (const auto& [j, k] : unordered) {
        int hits = 0;
        for (const auto& [a, b] : pairs)
            if ((a == j && b == k) || (a == k && b == j)) ++hits;
        if (hits != 1) return false;
    }
    return true;
}

double SelectionOfPairs::sum_at(const AntisymmetricField& B, long node) const {
    double s = 0.0;
    for (const auto& [j, k] : pairs) s += B.entry(node, j, k);
    return s;
}

ScalarField SelectionOfPairs::sum_field(const AntisymmetricField& B) const {
    ScalarField f(B.grid, 0.0);
    const long n = B.grid.node_count();
    for (long i = 0; i < n; ++i) f[i] = sum_at(B, i);
    return f;
}

SelectionScan enumerate_admissible_selections(const AntisymmetricField& B, const ScalarField& V,
                                              std::optional<double> tol) {
    const int dim = B.grid.dim;
    if (dim < 2 || dim > 3)
        throw std::invalid_argument("enumerate_admissible_selections: dim must be 2 or 3");
    if (!(V.grid == B.grid))
        throw std::invalid_argument("enumerate_admissible_selections: grid mismatch");

    SelectionScan scan;
    scan.tol_used = tol.value_or(1e-12 * B.max_abs());
    const auto unordered = AntisymmetricField::pair_list(dim);
    const int m = static_cast<int>(unordered.size());
    scan.candidates = 1 << m;
    const long n = B.grid.node_count();

    for (int mask = 0; mask < scan.candidates; ++mask) {
        SelectionOfPairs sel;
        for (int p = 0; p < m; ++p) {
            auto [j, k] = unordered[static_cast<std::size_t>(p)];
            if (mask & (1 << p))
                sel.pairs.emplace_back(k, j);
            else
                sel.pairs.emplace_back(j, k);
        }
        double worst = std::numeric_limits<double>::max();
        for (long f = 0; f < n; ++f) {
            worst = std::min(worst, sel.sum_at(B, f) + V[f]);
            if (worst < -scan.tol_used) break;
        }
        if (worst >= -scan.tol_used) scan.admissible.push_back(std::move(sel));
    }

    // strong directionality: every independent component keeps one sign
    bool strong = true;
    SelectionOfPairs maximal;
    for (int p = 0; p < m && strong; ++p) {
        const auto& comp = B.upper[static_cast<std::size_t>(p)];
        const double lo = comp.min_value(), hi = comp.max_value();
        auto [j, k] = unordered[static_cast<std::size_t>(p)];
        if (lo >= -scan.tol_used)
            maximal.pairs.emplace_back(j, k);
        else if (hi <= scan.tol_used)
            maximal.pairs.emplace_back(k, j);
        else
            strong = false;
    }
    scan.strong_directionality = strong;
    if (strong) scan.maximal = std::move(maximal);
    return scan;
}

namespace {

void verify_ellipticity(const Mat3& a, double lambda, int dim) {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = a[i][j];
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.eigenvalues().minCoeff() < lambda - 1e-12)
        throw std::invalid_argument("assemble_real: ellipticity lower bound violated");
    const double op_norm = m.jacobiSvd().singularValues()(0);
    if (op_norm > 1.0 / lambda + 1e-12)
        throw std::invalid_argument("assemble_real: coefficient norm exceeds 1/lambda");
}

} // namespace

AssembledReal assemble_real(const Grid& grid, const MatrixField& A, const ScalarField& V) {
    if (!(V.grid == grid)) throw std::invalid_argument("assemble_real: V grid mismatch");
    if (V.min_value() < 0.0) throw std::invalid_argument("assemble_real: V must be nonnegative");

    if (A.per_node) {
        for (long f = 0; f < grid.node_count(); ++f) verify_ellipticity(A.at(f), A.lambda, grid.dim);
    } else {
        verify_ellipticity(A.constant, A.lambda, grid.dim);
    }

    DirichletMap map(grid);
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    using Trip = CsrMatrix<double>::Triplet;
    std::vector<Trip> trips;
    trips.reserve(map.node_of_row.size() * (2 * grid.dim + 1));

    bool cross_terms = false;
    if (!A.is_identity) {
        for (int j = 0; j < grid.dim && !cross_terms; ++j)
            for (int k = 0; k < grid.dim; ++k)
                if (j != k && (A.per_node || A.constant[j][k] != 0.0)) {
                    cross_terms = true;
                    break;
                }
    }

    for (int r = 0; r < map.rows(); ++r) {
        const long f = map.node_of_row[static_cast<std::size_t>(r)];
        const Index3 idx = grid.unflat(f);
        double diag = V[f];

        for (int j = 0; j < grid.dim; ++j) {
            Index3 up = idx, dn = idx;
            ++up[j];
            --dn[j];
            const long fu = grid.flat(up), fd = grid.flat(dn);
            const double ajj = A.at(f)[j][j];
            const double a_plus = 0.5 * (ajj + A.at(fu)[j][j]);
            const double a_minus = 0.5 * (ajj + A.at(fd)[j][j]);
            diag += (a_plus + a_minus) * inv_h2;
            const int ru = map.row_of_node[static_cast<std::size_t>(fu)];
            const int rd = map.row_of_node[static_cast<std::size_t>(fd)];
            if (ru >= 0) trips.push_back({r, ru, -a_plus * inv_h2});
            if (rd >= 0) trips.push_back({r, rd, -a_minus * inv_h2});
        }

        if (cross_terms) {
            // -d_j(a_jk d_k u) by centered differences, summed over j != k
            for (int j = 0; j < grid.dim; ++j)
                for (int k = 0; k < grid.dim; ++k) {
                    if (j == k) continue;
                    Index3 pj = idx, mj = idx;
                    ++pj[j];
                    --mj[j];
                    const double a_p = A.at(grid.flat(pj))[j][k];
                    const double a_m = A.at(grid.flat(mj))[j][k];
                    const double c = 0.25 * inv_h2;
                    auto add = [&](Index3 at, double v) {
                        if (!grid.contains(at)) return;
                        const int rc = map.row_of_node[static_cast<std::size_t>(grid.flat(at))];
                        if (rc >= 0) trips.push_back({r, rc, v});
                    };
                    Index3 t = pj;
                    ++t[k];
                    add(t, -a_p * c);
                    t = pj;
                    --t[k];
                    add(t, a_p * c);
                    t = mj;
                    ++t[k];
                    add(t, a_m * c);
                    t = mj;
                    --t[k];
                    add(t, -a_m * c);
                }
        }

        trips.push_back({r, r, diag});
    }

    const bool symmetric = A.symmetric_everywhere(grid.node_count());
    AssembledReal out{CsrMatrix<double>::from_triplets(map.rows(), std::move(trips),
                                                       symmetric ? Symmetry::symmetric
                                                                 : Symmetry::general),
                      std::move(map)};
    return out;
}

AssembledMagnetic assemble_magnetic(const Grid& grid, const EdgePhaseField& phases,
                                    const ScalarField& V) {
    if (!(V.grid == grid)) throw std::invalid_argument("assemble_magnetic: V grid mismatch");
    if (!(phases.grid == grid)) throw std::invalid_argument("assemble_magnetic: phase grid mismatch");

    DirichletMap map(grid);
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    using C = std::complex<double>;
    using Trip = CsrMatrix<C>::Triplet;
    std::vector<Trip> trips;
    trips.reserve(map.node_of_row.size() * (2 * grid.dim + 1));

    for (int r = 0; r < map.rows(); ++r) {
        const long f = map.node_of_row[static_cast<std::size_t>(r)];
        const Index3 idx = grid.unflat(f);
        trips.push_back({r, r, C(2.0 * grid.dim * inv_h2 + V[f], 0.0)});
        for (int j = 0; j < grid.dim; ++j) {
            Index3 up = idx, dn = idx;
            ++up[j];
            --dn[j];
            const long fu = grid.flat(up), fd = grid.flat(dn);
            const int ru = map.row_of_node[static_cast<std::size_t>(fu)];
            const int rd = map.row_of_node[static_cast<std::size_t>(fd)];
            // row x, column x+he_j carries -e^{i theta(x->x+he_j)} / h^2
            if (ru >= 0) trips.push_back({r, ru, -std::polar(inv_h2, phases.phase(f, j))});
            if (rd >= 0) trips.push_back({r, rd, -std::polar(inv_h2, -phases.phase(fd, j))});
        }
    }

    AssembledMagnetic out{CsrMatrix<C>::from_triplets(map.rows(), std::move(trips),
                                                      Symmetry::hermitian),
                          std::move(map)};
    return out;
}

AntisymmetricField discrete_field_from_phases(const EdgePhaseField& phases) {
    const Grid& g = phases.grid;
    if (g.dim < 2) throw std::invalid_argument("discrete_field_from_phases: dim must be >= 2");
    AntisymmetricField B(g);
    const double inv_h2 = 1.0 / (g.h * g.h);
    const long n = g.node_count();
    for (long f = 0; f < n; ++f) {
        Index3 idx = g.unflat(f);
        for (const auto& [j, k] : AntisymmetricField::pair_list(g.dim)) {
            // clamp to the nearest full plaquette on the upper faces
            Index3 at = idx;
            at[j] = std::min(at[j], g.shape[j] - 2);
            at[k] = std::min(at[k], g.shape[k] - 2);
            const long x = g.flat(at);
            Index3 aj = at, ak = at;
            ++aj[j];
            ++ak[k];
            const double flux = phases.phase(x, k) + phases.phase(g.flat(ak), j) -
                                phases.phase(g.flat(aj), k) - phases.phase(x, j);
            B.set_entry(f, j, k, flux * inv_h2);
        }
    }
    return B;
}

} // namespace lslab
