#include "chernflow/flow.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "chernflow/chern.hpp"
#include "chernflow/parallel.hpp"

namespace chernflow {

HermitianMatrix exact_flow_metric(const HopfFamily& fam, double t, const Vector& z) {
    if (!(t >= 0.0) || !(t < fam.t_max()))
        throw ParameterOutOfRange("t = " + std::to_string(t) + " outside [0, T_max)");
    require_point(z);
    if (z.size() != fam.n) throw DimensionMismatch("point dimension does not match family");
    const double c = 1.0 + fam.T0 - fam.n * t;
    const double d = fam.T0 - fam.n * t;
    const double r2 = z.squaredNorm();
    CMatrix g(fam.n, fam.n);
    for (int i = 0; i < fam.n; ++i)
        for (int j = 0; j < fam.n; ++j) {
            const double kron = i == j ? 1.0 : 0.0;
            g(i, j) = (c * kron - d * std::conj(z(i)) * z(j) / r2) / r2;
        }
    return HermitianMatrix(g, HermitianMatrix::Definiteness::PositiveDefinite);
}

double max_time(const HopfFamily& fam) { return fam.t_max(); }

MetricField flow_metric_field(const HopfFamily& fam, double t) {
    std::ostringstream label;
    label << "flow(n=" << fam.n << ",T0=" << fam.T0 << ",t=" << t << ")";
    return MetricField{[fam, t](const Vector& z) { return exact_flow_metric(fam, t, z); },
                       label.str()};
}

namespace {

EulerResult euler_core(const std::function<MetricField(double)>& field_at,
                       const std::vector<Vector>& points, double dt, double t_end) {
    if (!(dt > 0.0)) throw ParameterOutOfRange("dt must be positive");
    if (!(t_end >= 0.0)) throw ParameterOutOfRange("t_end must be >= 0");
    if (points.empty()) throw ParameterOutOfRange("need at least one sample point");

    EulerResult res;
    res.metrics.reserve(points.size());
    {
        const MetricField g0 = field_at(0.0);
        for (const auto& z : points) res.metrics.push_back(g0.evaluate(z));
    }

    double t = 0.0;
    while (t < t_end - 1e-15) {
        const double step = std::min(dt, t_end - t);
        const MetricField field = field_at(t);
        std::vector<CMatrix> ricci(points.size());
        parallel_for(static_cast<int>(points.size()), [&](int i) {
            ricci[i] = ricci_numeric(field, points[i]).mat();
        });
        for (size_t i = 0; i < points.size(); ++i) {
            HermitianMatrix next(res.metrics[i].mat() - step * ricci[i]);
            if (hermitian_eigenvalues(next)(0) <= 0.0) {
                std::ostringstream msg;
                msg << "metric lost positive definiteness at t = " << t + step
                    << ", sample point " << i;
                throw NotPositiveDefinite(msg.str());
            }
            next.set_definiteness(HermitianMatrix::Definiteness::PositiveDefinite);
            res.metrics[i] = next;
        }
        t += step;
        ++res.steps;
    }
    res.t_end = t;
    return res;
}

}  // namespace

EulerResult euler_flow(const MetricField& g0, const std::vector<Vector>& points, double dt,
                       double t_end) {
    return euler_core([&g0](double) { return g0; }, points, dt, t_end);
}

EulerResult euler_flow(const HopfFamily& fam, const std::vector<Vector>& points, double dt,
                       double t_end) {
    if (!(t_end < fam.t_max()))
        throw ParameterOutOfRange("t_end must stay below the maximal existence time");
    return euler_core([&fam](double t) { return flow_metric_field(fam, t); }, points, dt,
                      t_end);
}

FlowTrace flow_trace(const HopfFamily& fam, const std::vector<double>& times,
                     const SampleOptions& opt) {
    if (times.empty()) throw ParameterOutOfRange("need at least one trace time");
    for (size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !(times[i] < fam.t_max()))
            throw ParameterOutOfRange("trace time outside [0, T_max)");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw ParameterOutOfRange("trace times must be strictly increasing");
    }

    FlowTrace trace{fam.n, fam.T0, opt.seed, opt.samples, opt.starts, {}};
    trace.rows.reserve(times.size());
    for (double t : times) {
        const SignReport rep = classify_time(fam, t, opt);
        trace.rows.push_back(FlowTraceRow{t, rep.lambda, 1.0 + fam.T0 - fam.n * t,
                                          rep.min_hsc, rep.min_hbc, rep.verdict,
                                          rep.witness_z, rep.witness.xi, rep.witness.eta});
    }
    return trace;
}

}  // namespace chernflow
