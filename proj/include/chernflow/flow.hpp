#pragma once

#include <vector>

#include "chernflow/analysis.hpp"
#include "chernflow/hopf.hpp"

namespace chernflow {

/// Flow metric coefficients, evaluated from the displayed closed form
///   ((1 + T0 - n t) delta_ij - (T0 - n t) zbar^i z^j / |z|^2) / |z|^2,
/// positive-definite for 0 <= t < t_max.  Algebraically this equals
/// (1 + T0 - n t) * hopf_metric(lambda(t), z); the two routes are compared in
/// the test suite, never collapsed here.
HermitianMatrix exact_flow_metric(const HopfFamily& fam, double t, const Vector& z);

/// (T0 + 1) / n: the time where the (n-1)-fold eigenvalue (1 + T0 - n t)/|z|^2
/// of the flow metric reaches zero.
double max_time(const HopfFamily& fam);

/// The flow metric at fixed t as an evaluation contract.
MetricField flow_metric_field(const HopfFamily& fam, double t);

struct EulerResult {
    double t_end = 0.0;
    int steps = 0;
    std::vector<HermitianMatrix> metrics;  // one per sample point
};

/// Pointwise explicit Euler g <- g - dt * ricci_numeric(field(t)) on a sample
/// set.  The field supplying the Ricci stencil is the caller's contract:
/// time-independent for a generic initial field, the closed-form family
/// member at the current time for a Hopf run.  Throws NotPositiveDefinite
/// (with the offending t and point) if an evolved matrix loses positive
/// definiteness before t_end.
EulerResult euler_flow(const MetricField& g0, const std::vector<Vector>& points, double dt,
                       double t_end);
EulerResult euler_flow(const HopfFamily& fam, const std::vector<Vector>& points, double dt,
                       double t_end);

struct FlowTraceRow {
    double t;
    double lambda;
    double det_factor;  // 1 + T0 - n t
    double min_hsc;
    double min_hbc;
    Verdict verdict;
    Vector witness_z;
    Vector witness_xi;
    Vector witness_eta;
};

struct FlowTrace {
    int n;
    double T0;
    std::uint64_t seed;
    int samples;
    int starts;
    std::vector<FlowTraceRow> rows;
};

/// One classified row per time; times must be strictly increasing inside
/// [0, t_max).
FlowTrace flow_trace(const HopfFamily& fam, const std::vector<double>& times,
                     const SampleOptions& opt);

}  // namespace chernflow
