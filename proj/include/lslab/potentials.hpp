#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "lslab/fields.hpp"
#include "lslab/grid.hpp"
#include "lslab/polynomial.hpp"

namespace lslab {

enum class PotentialKind {
    constant,        // V = c
    power,           // V = |x|^alpha, alpha > -2; singular cells are cell-averaged
    polynomial,      // V = |P(x)|^alpha
    well,            // V = inside_value in a ball, outside_value elsewhere
    double_well,     // two balls
    exp_decay,       // V = amp * exp(-|x|) + offset
    random_uniform,  // iid per node in [lo, hi], seeded
    table,           // field CSV produced by write_field_csv
};

struct PotentialSpec {
    PotentialKind kind = PotentialKind::constant;
    double constant_value = 1.0;

    double power_alpha = 2.0;

    Polynomial poly = Polynomial::constant(1.0);
    double poly_alpha = 1.0;

    Coord well_center{0, 0, 0};
    Coord well_center2{0, 0, 0};
    double well_radius = 1.0;
    double well_inside = 0.0;
    double well_outside = 1.0;

    double exp_amp = 1.0;
    double exp_offset = 0.0;

    double random_lo = 0.0;
    double random_hi = 1.0;
    std::uint64_t seed = 1;

    std::string table_path;
};

/// Node samples of the potential; cells containing the |x|^alpha
/// singularity get their exact cell average (closed form in 1D, adaptive
/// quadrature above). Rejects alpha <= -2 (not locally integrable).
ScalarField generate_potential(const PotentialSpec& spec, const Grid& grid);

/// Average of |x|^alpha over the cell [center-h/2, center+h/2]^dim.
/// Exposed for the quadrature oracle tests.
double cell_average_abs_pow(const Coord& center, double h, double alpha, int dim);

enum class VectorPotentialKind { none, constant_field, example1, table };

struct VectorPotentialSpec {
    VectorPotentialKind kind = VectorPotentialKind::none;
    // constant_field: independent entries of the constant antisymmetric B.
    double b12 = 0.0, b13 = 0.0, b23 = 0.0;
    // example1: Hoelder exponent in (0,1).
    double example1_alpha = 0.5;
    std::array<std::string, 3> table_paths;
    Rotation rotation;
};

/// Pointwise vector potential (symmetric gauge for constant fields,
/// a_j = sign(x_{j+1}) |x_{j+1}|^alpha cyclically for example1).
Coord eval_vector_potential(const VectorPotentialSpec& spec, const Coord& x);

/// The analytic magnetic field of the spec sampled on the grid, with
/// singular entries cell-averaged along the singular coordinate.
AntisymmetricField sample_magnetic_field(const VectorPotentialSpec& spec, const Grid& grid);

struct Example1Field {
    std::array<ScalarField, 3> a;   // node samples of the vector potential
    AntisymmetricField B;
};

/// The cyclic Hoelder field: a_j(x) = sign(x_{j+1}) |x_{j+1}|^alpha with
/// x_4 = x_1, so b_{j,j+1} = alpha |x_{j+1}|^{alpha-1} and b_{3,1} closes
/// the cycle. Requires dim == 3 and alpha in (0,1).
Example1Field generate_example1_field(double alpha, const Grid& grid);

struct RegularityReport {
    // reverse Hoelder
    double rh_q = 0.0;
    double rh_characteristic = 0.0;

    // scale-invariant Kato fit: integral_{B_r} V <= C0 (r/R)^{n-2+delta} integral_{B_R} V
    double kato_C0 = 0.0;
    double kato_delta = 0.0;
    // doubling with slack: integral_{B_2r} V <= C1 [integral_{B_r} V + r^{n-2}]
    double doubling_C1 = 0.0;

    // Gap between the fitted exponent n-2+delta and the smallest local
    // mass-scaling exponent observed at the finest shells. For potentials
    // with an L1_loc limit this contracts under grid refinement; iid noise
    // keeps a resolution-independent deficit.
    double fine_exponent_deficit = 0.0;

    bool is_shen = false;
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Finite-sample proxy for the RH_q characteristic over seeded balls:
/// max over balls of (avg V^q)^{1/q} / (avg V). Infinite when a ball
/// average vanishes under a nonzero numerator.
RegularityReport check_reverse_holder(const ScalarField& field, double q, int sample_balls,
                                      std::uint64_t seed);

/// Fits (C0, delta) and C1 over seeded centers with dyadic radius ladders.
RegularityReport check_kato_and_doubling(const ScalarField& field, int samples,
                                         std::uint64_t seed);

/// Two-resolution Shen classification: the single-grid fits must hold at h
/// and h/2 and the fine-scale exponent deficit must contract. Fields with
/// no h -> 0 limit (iid per-node noise) fail the contraction.
struct ShenClassification {
    RegularityReport coarse;
    RegularityReport fine;
    bool deficit_contracts = false;
    bool is_shen = false;
};
ShenClassification classify_shen_potential(const PotentialSpec& spec, const Grid& grid,
                                           int samples, std::uint64_t seed);

} // namespace lslab
