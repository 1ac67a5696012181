#pragma once

#include <cstdint>
#include <vector>

#include "chernflow/hopf.hpp"
#include "chernflow/tensor.hpp"

namespace chernflow {

/// Unit frame (xi, eta) for bisectional-curvature contractions.
struct FramePair {
    Vector xi;
    Vector eta;

    FramePair(Vector xi_, Vector eta_);
    static FramePair normalized(const Vector& xi_, const Vector& eta_);
};

/// The scalar data HSC depends on: a = |zbar . xi|^2, b = |z|^2 |xi|^2,
/// with b >= a >= 0 by Cauchy-Schwarz.
struct ABForm {
    double a;
    double b;
    double z_norm8;

    ABForm(double a_, double b_, double z_norm8_);
};

ABForm ab_from_frame(const Vector& z, const Vector& xi);

enum class Verdict { NonNegative, Negative, GapExplored };
const char* to_string(Verdict v);

/// Sign verdicts use a -1e-9 cutoff: anything above it counts as non-negative
/// (floating noise), anything below is genuine negativity.
constexpr double kSignCutoff = -1e-9;

/// Holomorphic bisectional curvature R_{k jbar i qbar} xi^k conj(xi^j) eta^i conj(eta^q).
/// The contraction of a Chern-symmetric tensor is real; the imaginary residue
/// is checked (SymmetryViolation above 1e-6) and discarded.
double hbc(const CurvatureTensor& R, const Vector& xi, const Vector& eta);

/// Holomorphic sectional curvature: hbc with eta = xi.
double hsc(const CurvatureTensor& R, const Vector& xi);

/// HBC for the lambda-family via the three-term closed expansion; avoids
/// building the rank-4 tensor.
double hopf_hbc_closed(double lambda, const Vector& z, const Vector& xi, const Vector& eta);

/// ((b-a) a (lambda-1)^2 + (b-a)^2 (lambda+1)) / |z|^8
double hopf_hsc_ab(double lambda, const ABForm& f);

/// Exact minimum of HSC over unit xi for the lambda-family at z: the ab-form
/// is a quadratic in a on [0, b], so the minimum is found among its endpoints
/// and vertex.
double hopf_min_hsc(double lambda, const Vector& z);

struct MinimizeOptions {
    int starts = 32;
    int max_iterations = 200;
    double tol = 1e-10;
    std::uint64_t seed = 42;
    bool record_trace = false;
};

struct MinimizeResult {
    double value = 0.0;
    Vector xi;
    Vector eta;
    int iterations = 0;            // iterations of the winning start
    std::vector<double> trace;     // its value sequence when recorded
};

/// Global minimization of HBC over unit (xi, eta) by alternating exact
/// eigen-steps: for fixed eta the form in xi is Hermitian quadratic with
/// matrix A(eta)_{kj} = sum_{iq} R_{k jbar i qbar} eta^i conj(eta^q), so the
/// restricted minimum is its smallest eigenpair; symmetrically for fixed xi.
/// The value sequence is non-increasing; best over `starts` seeded random
/// initializations wins, ties broken by lexicographically smallest witness.
/// Input is Chern-symmetrized before minimization.
MinimizeResult min_hbc(const CurvatureTensor& R, const MinimizeOptions& opt = {});

/// Unit xi with zbar . xi = 0 (standard basis vector least aligned with z,
/// projected and normalized), eta = xi.  For lambda < -1 this frame certifies
/// HSC = b^2 (lambda+1) / |z|^8 < 0 with b = |z|^2.
FramePair negative_witness(double lambda, const Vector& z);

struct ParameterTag {
    enum class Kind { Lambda, Time };
    Kind kind;
    double value;
};

struct SignReport {
    ParameterTag parameter;
    double lambda;        // the family parameter the verdict is about
    double min_hbc;
    double min_hsc;
    Vector witness_z;
    FramePair witness;
    Verdict verdict;
    std::uint64_t seed;
    int samples;
    int starts;
};

struct SampleOptions {
    int samples = 50;
    int starts = 32;
    std::uint64_t seed = 42;
};

/// Empirical sign analysis of the lambda-family: minimum HBC (alternating
/// minimizer) and exact minimum HSC over `samples` unit-sphere points.  For
/// lambda < -1 the constructed witness frames compete in the merge, so the
/// reported minimum is never above the certified value.
SignReport analyze_lambda(int n, double lambda, const SampleOptions& opt);

/// Single-point variant: the same analysis with the caller's z instead of
/// sampled directions.
SignReport analyze_lambda_at(double lambda, const Vector& z, int starts,
                             std::uint64_t seed);

/// analyze_lambda at lambda(t), with the verdict rules of the flow time axis:
/// nonneg on lambda in [0,1) (validated empirically), negative on lambda < -1
/// (witness constructed), gap-explored on [-1, 0) where no claim is made.
SignReport classify_time(const HopfFamily& fam, double t, const SampleOptions& opt);

struct ThresholdResult {
    double t_star;
    double bracket_lo;       // T0 / n
    double bracket_hi;       // (2 T0 + 1) / (2 n)
    double flip_lo;          // last time the predicate was false
    double flip_hi;          // first time the predicate was true
    bool predicate_at_lo;
    bool predicate_at_hi;
    int evaluations;
};

enum class CurvatureQuantity { Hsc, Hbc };

/// Bisect for the time where the empirical minimum of the chosen quantity
/// drops below the sign cutoff.  Seeded with the bracket
/// [T0/n, (2 T0 + 1)/(2n)]; when the flip sits at the right edge (the
/// predicate is still false there) one resolution-sized probe beyond the edge
/// locates it, and the returned t* is clamped into the closed bracket.
/// BracketInvalid when the predicate does not change at all.
ThresholdResult threshold_bisect(const HopfFamily& fam, CurvatureQuantity quantity,
                                 double resolution, const SampleOptions& opt);

}  // namespace chernflow
