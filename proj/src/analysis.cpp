#include "chernflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "chernflow/parallel.hpp"
#include "chernflow/rng.hpp"

namespace chernflow {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return a.size() < b.size();
}

bool witness_less(const Vector& xi_a, const Vector& eta_a, const Vector& xi_b,
                  const Vector& eta_b) {
    if (lex_less(xi_a, xi_b)) return true;
    if (lex_less(xi_b, xi_a)) return false;
    return lex_less(eta_a, eta_b);
}

}  // namespace

FramePair::FramePair(Vector xi_, Vector eta_) : xi(std::move(xi_)), eta(std::move(eta_)) {
    if (xi.size() != eta.size()) throw DimensionMismatch("frame vectors differ in size");
    if (std::abs(xi.norm() - 1.0) > 1e-12 || std::abs(eta.norm() - 1.0) > 1e-12)
        throw ParameterOutOfRange("frame vectors must be unit");
}

FramePair FramePair::normalized(const Vector& xi_, const Vector& eta_) {
    const double nx = xi_.norm();
    const double ne = eta_.norm();
    if (nx == 0.0 || ne == 0.0) throw ParameterOutOfRange("cannot normalize zero frame vector");
    return FramePair(xi_ / nx, eta_ / ne);
}

ABForm::ABForm(double a_, double b_, double z_norm8_) : a(a_), b(b_), z_norm8(z_norm8_) {
    if (a < 0.0 || a > b) throw ParameterOutOfRange("ab-form requires 0 <= a <= b");
    if (!(z_norm8 > 0.0)) throw ParameterOutOfRange("|z|^8 must be positive");
}

ABForm ab_from_frame(const Vector& z, const Vector& xi) {
    require_point(z);
    if (z.size() != xi.size()) throw DimensionMismatch("frame dimension does not match point");
    const double r2 = z.squaredNorm();
    const double a = std::norm(z.dot(xi));  // z.dot(xi) = sum conj(z^i) xi^i
    const double b = r2 * xi.squaredNorm();
    // clamp sub-ulp Cauchy-Schwarz violations so the invariant holds exactly
    return ABForm(std::min(a, b), b, std::pow(r2, 4));
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::NonNegative: return "nonneg";
        case Verdict::Negative: return "negative";
        case Verdict::GapExplored: return "gap-explored";
    }
    return "?";
}

double hbc(const CurvatureTensor& R, const Vector& xi, const Vector& eta) {
    const int n = R.dim();
    if (xi.size() != n || eta.size() != n)
        throw DimensionMismatch("frame dimension does not match tensor");
    Complex acc(0.0, 0.0);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            const Complex xx = xi(k) * std::conj(xi(j));
            for (int i = 0; i < n; ++i)
                for (int q = 0; q < n; ++q)
                    acc += R(k, j, i, q) * xx * eta(i) * std::conj(eta(q));
        }
    if (std::abs(acc.imag()) > 1e-6)
        throw SymmetryViolation("contraction has imaginary residue " +
                                std::to_string(acc.imag()));
    return acc.real();
}

double hsc(const CurvatureTensor& R, const Vector& xi) { return hbc(R, xi, xi); }

double hopf_hbc_closed(double lambda, const Vector& z, const Vector& xi, const Vector& eta) {
    require_point(z);
    if (xi.size() != z.size() || eta.size() != z.size())
        throw DimensionMismatch("frame dimension does not match point");
    const double r2 = z.squaredNorm();
    const double r6 = r2 * r2 * r2;
    const double r8 = r6 * r2;
    const Complex zxi = z.dot(xi);   // zbar . xi
    const Complex zeta = z.dot(eta); // zbar . eta
    const double cross = r2 * xi.squaredNorm() - std::norm(zxi);

    const double term1 = eta.squaredNorm() * cross / r6;
    const Complex mid = r2 * xi.dot(eta) - zeta * std::conj(zxi);
    const double term2 = lambda * std::norm(mid) / r8;
    const double term3 = (lambda * lambda - 2.0 * lambda) * std::norm(zeta) * cross / r8;
    return term1 + term2 + term3;
}

double hopf_hsc_ab(double lambda, const ABForm& f) {
    const double d = f.b - f.a;
    return (d * f.a * (lambda - 1.0) * (lambda - 1.0) + d * d * (lambda + 1.0)) / f.z_norm8;
}

double hopf_min_hsc(double lambda, const Vector& z) {
    require_point(z);
    const double b = z.squaredNorm();  // unit xi
    const double r8 = std::pow(b, 4);
    // g(a) = (lambda-1)^2 (a b - a^2) + (lambda+1)(b - a)^2 on [0, b]
    auto g = [&](double a) {
        const double d = b - a;
        return (d * a * (lambda - 1.0) * (lambda - 1.0) + d * d * (lambda + 1.0)) / r8;
    };
    double best = std::min(g(0.0), g(b));
    const double quad = 3.0 * lambda - lambda * lambda;           // coefficient of a^2
    if (quad > 0.0) {
        const double lin = b * (lambda * lambda - 4.0 * lambda - 1.0);  // coefficient of a
        const double vertex = -lin / (2.0 * quad);
        if (vertex > 0.0 && vertex < b) best = std::min(best, g(vertex));
    }
    return best;
}

namespace {

// orthonormal basis of the orthogonal complement of a unit vector,
// deterministic (Gram-Schmidt over the standard basis, skipping the index of
// the largest component)
std::vector<Vector> orthogonal_complement(const Vector& u) {
    const Eigen::Index n = u.size();
    Eigen::Index skip = 0;
    u.cwiseAbs().maxCoeff(&skip);
    std::vector<Vector> accepted = {u};
    std::vector<Vector> out;
    for (Eigen::Index m = 0; m < n; ++m) {
        if (m == skip) continue;
        Vector v = Vector::Zero(n);
        v(m) = 1.0;
        for (const auto& b : accepted) v -= b.dot(v) * b;
        const double norm = v.norm();
        if (norm > 1e-8) {
            v /= norm;
            accepted.push_back(v);
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

MinimizeResult min_hbc(const CurvatureTensor& R, const MinimizeOptions& opt) {
    if (opt.starts < 1) throw ParameterOutOfRange("minimizer needs at least one start");
    const int n = R.dim();
    const CurvatureTensor S = R.chern_symmetrized();
    const double scale = std::max(1.0, S.max_abs());

    auto form_in_xi = [&](const Vector& eta) {
        CMatrix A(n, n);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                Complex acc(0.0, 0.0);
                for (int i = 0; i < n; ++i)
                    for (int q = 0; q < n; ++q)
                        acc += S(k, j, i, q) * eta(i) * std::conj(eta(q));
                A(k, j) = acc;
            }
        return HermitianMatrix(A);
    };
    auto form_in_eta = [&](const Vector& xi) {
        CMatrix B(n, n);
        for (int i = 0; i < n; ++i)
            for (int q = 0; q < n; ++q) {
                Complex acc(0.0, 0.0);
                for (int k = 0; k < n; ++k)
                    for (int j = 0; j < n; ++j)
                        acc += S(k, j, i, q) * xi(k) * std::conj(xi(j));
                B(i, q) = acc;
            }
        return HermitianMatrix(B);
    };

    // When the eta-step matrix degenerates to ~0 (the current xi annihilates
    // the form, e.g. the radial direction of the Hopf tensor), every eta is an
    // argmin of the restricted problem and the eigensolver's arbitrary pick
    // can strand the iteration on a 0-plateau above a genuine negative well.
    // Break the tie by one-step lookahead over an orthonormal basis of the
    // complement of xi; accept only strict descent, so monotonicity and
    // termination are untouched.  Symmetrically for the xi step.
    auto escape_candidate = [&](const Vector& fixed, double current,
                                auto&& lookahead_form) -> std::optional<Vector> {
        std::optional<Vector> best;
        double best_look = current - opt.tol;
        for (const Vector& cand : orthogonal_complement(fixed)) {
            const double look = hermitian_min_eigen(lookahead_form(cand)).first;
            if (look < best_look) {
                best_look = look;
                best = cand;
            }
        }
        return best;
    };

    MinimizeResult best;
    best.value = std::numeric_limits<double>::infinity();

    for (int s = 0; s < opt.starts; ++s) {
        std::mt19937_64 eng(subseed(opt.seed, s));
        Vector eta = random_unit_vector(eng, n);
        Vector xi;
        double value = std::numeric_limits<double>::infinity();
        std::vector<double> trace;
        int iter = 0;
        bool converged = false;
        for (; iter < opt.max_iterations; ++iter) {
            // exact minimum over xi at fixed eta; the quadratic form value is
            // w* A w at w = conj(xi), so the witness is the conjugate eigenvector
            const HermitianMatrix A = form_in_xi(eta);
            auto [mu_xi, vx] = hermitian_min_eigen(A);
            if (mu_xi > value + 1e-10 * scale)
                throw ConvergenceFailure("minimizer value increased across xi step");
            xi = canonical_phase(vx.conjugate());
            bool escaped = false;
            if (A.mat().cwiseAbs().maxCoeff() <= 1e-10 * scale) {
                if (auto cand = escape_candidate(eta, mu_xi, form_in_eta)) {
                    xi = *cand;
                    escaped = true;
                }
            }
            if (opt.record_trace) trace.push_back(mu_xi);

            const HermitianMatrix B = form_in_eta(xi);
            auto [mu_eta, ve] = hermitian_min_eigen(B);
            if (!escaped && mu_eta > mu_xi + 1e-10 * scale)
                throw ConvergenceFailure("minimizer value increased across eta step");
            eta = canonical_phase(ve.conjugate());
            if (B.mat().cwiseAbs().maxCoeff() <= 1e-10 * scale) {
                if (auto cand = escape_candidate(xi, mu_eta, form_in_xi)) {
                    eta = *cand;
                    escaped = true;
                }
            }
            if (opt.record_trace) trace.push_back(mu_eta);

            if (!escaped && std::isfinite(value) && std::abs(value - mu_eta) < opt.tol) {
                value = mu_eta;
                converged = true;
                break;
            }
            value = mu_eta;
        }
        if (!converged)
            throw ConvergenceFailure("minimizer still oscillating after iteration cap");

        const bool better = value < best.value ||
                            (value == best.value &&
                             witness_less(xi, eta, best.xi, best.eta));
        if (better) {
            best.value = value;
            best.xi = xi;
            best.eta = eta;
            best.iterations = iter + 1;
            best.trace = std::move(trace);
        }
    }
    return best;
}

FramePair negative_witness(double lambda, const Vector& z) {
    require_point(z);
    if (!(lambda < -1.0))
        throw ParameterOutOfRange("negativity witness requires lambda < -1");
    if (z.size() < 2)
        throw ParameterOutOfRange("negativity witness requires dimension >= 2");
    // basis vector least aligned with z, projected onto the orthogonal
    // complement of z
    Eigen::Index m = 0;
    double least = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (std::abs(z(i)) < least) {
            least = std::abs(z(i));
            m = i;
        }
    }
    Vector xi = Vector::Zero(z.size());
    xi(m) = 1.0;
    xi -= (std::conj(z(m)) / z.squaredNorm()) * z;  // now zbar . xi = 0
    xi = canonical_phase(xi / xi.norm());
    return FramePair(xi, xi);
}

namespace {

struct SampleOutcome {
    double min_hbc;
    double min_hsc;
    Vector z;
    Vector xi;
    Vector eta;
};

SampleOutcome analyze_at_z(double lambda, const Vector& z, int starts,
                           std::uint64_t min_seed) {
    SampleOutcome out;
    out.z = z;
    const LambdaMetric metric(static_cast<int>(z.size()), lambda);
    const CurvatureTensor R = hopf_curvature(metric, z);

    MinimizeOptions mopt;
    mopt.starts = starts;
    mopt.seed = min_seed;
    MinimizeResult mr = min_hbc(R, mopt);
    out.min_hbc = mr.value;
    out.xi = mr.xi;
    out.eta = mr.eta;
    out.min_hsc = hopf_min_hsc(lambda, z);

    if (lambda < -1.0 && z.size() >= 2) {
        // the constructed witness competes in the merge so the reported
        // minimum never sits above the certified value
        const FramePair w = negative_witness(lambda, z);
        const double wv = hsc(R, w.xi);
        if (wv < out.min_hbc) {
            out.min_hbc = wv;
            out.xi = w.xi;
            out.eta = w.eta;
        }
    }
    return out;
}

Verdict decide_verdict(double lambda, double min_hbc_value) {
    if (lambda >= 0.0) {
        if (min_hbc_value < kSignCutoff)
            throw ToleranceBreach("empirical HBC minimum " + std::to_string(min_hbc_value) +
                                  " negative in the certified nonneg range");
        return Verdict::NonNegative;
    }
    if (lambda < -1.0 && min_hbc_value < kSignCutoff) return Verdict::Negative;
    // [-1, 0): no claim either way; also catches the sub-cutoff sliver just
    // below -1
    return Verdict::GapExplored;
}

}  // namespace

SignReport analyze_lambda(int n, double lambda, const SampleOptions& opt) {
    if (opt.samples < 1) throw ParameterOutOfRange("need at least one sample");
    if (!(lambda < 1.0)) throw ParameterOutOfRange("lambda must be < 1");

    std::vector<SampleOutcome> outcomes(opt.samples);
    parallel_for(opt.samples, [&](int s) {
        std::mt19937_64 eng(subseed(opt.seed, s));
        // |z| = 1: scale covariance makes this wlog for sign questions
        const Vector z = random_unit_vector(eng, n);
        outcomes[s] = analyze_at_z(lambda, z, opt.starts, subseed(opt.seed, 0x100000 + s));
    });

    const SampleOutcome* best = &outcomes[0];
    double min_hsc_all = outcomes[0].min_hsc;
    for (const auto& o : outcomes) {
        min_hsc_all = std::min(min_hsc_all, o.min_hsc);
        const bool better = o.min_hbc < best->min_hbc ||
                            (o.min_hbc == best->min_hbc &&
                             witness_less(o.xi, o.eta, best->xi, best->eta));
        if (better) best = &o;
    }

    return SignReport{ParameterTag{ParameterTag::Kind::Lambda, lambda},
                      lambda,
                      best->min_hbc,
                      min_hsc_all,
                      best->z,
                      FramePair(best->xi, best->eta),
                      decide_verdict(lambda, best->min_hbc),
                      opt.seed,
                      opt.samples,
                      opt.starts};
}

SignReport analyze_lambda_at(double lambda, const Vector& z, int starts,
                             std::uint64_t seed) {
    require_point(z);
    if (!(lambda < 1.0)) throw ParameterOutOfRange("lambda must be < 1");
    const SampleOutcome o = analyze_at_z(lambda, z, starts, subseed(seed, 0x100000));
    return SignReport{ParameterTag{ParameterTag::Kind::Lambda, lambda},
                      lambda,
                      o.min_hbc,
                      o.min_hsc,
                      o.z,
                      FramePair(o.xi, o.eta),
                      decide_verdict(lambda, o.min_hbc),
                      seed,
                      1,
                      starts};
}

SignReport classify_time(const HopfFamily& fam, double t, const SampleOptions& opt) {
    const double lambda = lambda_of_t(fam, t);
    SignReport report = analyze_lambda(fam.n, lambda, opt);
    report.parameter = ParameterTag{ParameterTag::Kind::Time, t};
    return report;
}

ThresholdResult threshold_bisect(const HopfFamily& fam, CurvatureQuantity quantity,
                                 double resolution, const SampleOptions& opt) {
    if (!(resolution >= 1e-8)) throw ParameterOutOfRange("resolution must be >= 1e-8");
    const Thresholds th = thresholds(fam);

    // one fixed z-set reused for every predicate evaluation
    std::vector<Vector> zs(opt.samples);
    for (int s = 0; s < opt.samples; ++s) {
        std::mt19937_64 eng(subseed(opt.seed, s));
        zs[s] = random_unit_vector(eng, fam.n);
    }

    int evaluations = 0;
    auto predicate = [&](double t) {
        ++evaluations;
        const double lambda = lambda_of_t(fam, t);
        double lo = std::numeric_limits<double>::infinity();
        if (quantity == CurvatureQuantity::Hsc) {
            for (const auto& z : zs) lo = std::min(lo, hopf_min_hsc(lambda, z));
        } else {
            std::vector<double> vals(opt.samples);
            parallel_for(opt.samples, [&](int s) {
                const LambdaMetric metric(fam.n, lambda);
                MinimizeOptions mopt;
                mopt.starts = opt.starts;
                mopt.seed = subseed(opt.seed, 0x200000 + s);
                vals[s] = min_hbc(hopf_curvature(metric, zs[s]), mopt).value;
            });
            for (double v : vals) lo = std::min(lo, v);
        }
        return lo < kSignCutoff;
    };

    const bool p_lo = predicate(th.t_nonneg_end);
    const bool p_hi = predicate(th.t_neg_start);
    if (p_lo)
        throw BracketInvalid("predicate already true at left bracket endpoint");

    double a = th.t_nonneg_end;
    double b;
    if (p_hi) {
        b = th.t_neg_start;
    } else {
        // flip sits at (or beyond) the right edge; probe one resolution step
        // outside, staying clear of T_max
        const double probe =
            std::min(th.t_neg_start + resolution, 0.5 * (th.t_neg_start + th.t_max));
        if (!predicate(probe))
            throw BracketInvalid("predicate does not change over the bracket");
        a = th.t_neg_start;
        b = probe;
    }

    while (b - a > resolution) {
        const double mid = 0.5 * (a + b);
        if (predicate(mid))
            b = mid;
        else
            a = mid;
    }

    const double t_star = std::clamp(0.5 * (a + b), th.t_nonneg_end, th.t_neg_start);
    return ThresholdResult{t_star, th.t_nonneg_end, th.t_neg_start, a, b,
                           p_lo,   p_hi,            evaluations};
}

}  // namespace chernflow
