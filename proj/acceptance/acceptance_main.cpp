// Acceptance suite. Each numbered criterion prints exactly one
// [PASS]/[FAIL] line with the measured quantity, its bound, and the wall
// time; informational lines are tagged [INFO]. The process exits 0 only
// when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <hn2/hn2.hpp>

namespace {

using hn2::complex;
using hn2::pi;

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const char* label, bool ok, const std::string& detail, double secs,
            double time_limit = 0.0) {
    if (!ok) ++failures;
    std::printf("[%s] %d. %s: %s in %.2f s", ok ? "PASS" : "FAIL", id, label, detail.c_str(),
                secs);
    if (time_limit > 0.0) std::printf(" (limit %g s)", time_limit);
    std::printf("\n");
    std::fflush(stdout);
}

void info(const std::string& text) {
    std::printf("[INFO] %s\n", text.c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// The 400-point standard grid: both variables range over re x im.
std::vector<complex> grid_axis() {
    std::vector<complex> pts;
    for (double im : {0.5, 1.0, 2.0, 4.0})
        for (double re : {-2.0, -1.0, 0.0, 1.0, 2.0}) pts.emplace_back(re, im);
    return pts;
}

template <class F>
double max_on_grid(F&& deviation) {
    const auto pts = grid_axis();
    double worst = 0.0;
    for (const complex z1 : pts)
        for (const complex z2 : pts) worst = std::max(worst, deviation(z1, z2));
    return worst;
}

// --------------------------------------------------------------------------

void criterion_1_kernel_identity() {
    Timer t;
    std::mt19937_64 rng(752001);
    std::uniform_real_distribution<double> re_box(-3.0, 3.0), im_box(0.1, 5.0),
        t_box(-50.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const complex z1(re_box(rng), im_box(rng));
        const complex z2(re_box(rng), im_box(rng));
        const double t1 = t_box(rng), t2 = t_box(rng);
        const double lhs = std::imag(hn2::kernel_K(z1, z2, t1, t2));
        const double rhs = hn2::poisson_P(z1, z2, t1, t2) -
                           0.5 * hn2::nevanlinna_integrand(z1, z2, t1, t2);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    const double secs = t.seconds();
    report(1, "kernel decomposition identity over 1e5 samples",
           worst <= 1e-12 && secs < 5.0,
           "max |Im K - (P - N/2)| = " + num(worst) + " (bound 1e-12)", secs, 5.0);
}

void criterion_2_ex1_end_to_end() {
    Timer t;
    const auto& e = hn2::corpus_entry("ex1");
    const hn2::QuadratureConfig cfg{};

    const double grid_dev = max_on_grid([&](complex z1, complex z2) {
        return std::abs(hn2::evaluate(e.rep, z1, z2, cfg).value + 1.0 / z2);
    });

    auto q = [&](complex z1, complex z2) { return hn2::evaluate(e.rep, z1, z2, cfg).value; };
    const double a = hn2::extract_a(q);

    const auto schedule = hn2::StolzSchedule::standard();
    double worst_b = 0.0;
    bool limits_ok = true;
    for (int axis : {1, 2})
        for (const complex anchor : {complex(0, 1), complex(1, 2)}) {
            const hn2::LimitEstimate b = hn2::extract_b(q, axis, schedule, 1e-6, anchor);
            limits_ok = limits_ok && b.converged;
            worst_b = std::max(worst_b, std::abs(b.value));
        }
    const hn2::LimitEstimate c2 = hn2::extract_c(q, 2, 0.0, schedule, 1e-6);
    limits_ok = limits_ok && c2.converged;

    const double secs = t.seconds();
    const bool ok = grid_dev <= 1e-6 && std::abs(a) <= 1e-6 && worst_b <= 1e-3 &&
                    std::abs(c2.value - complex(-1.0, 0.0)) <= 1e-3 && limits_ok &&
                    secs < 60.0;
    report(2, "ex1 end-to-end (grid, a, b both axes and anchors, c2)", ok,
           "grid dev " + num(grid_dev) + " (1e-6), |a| = " + num(std::abs(a)) +
               " (1e-6), max |b| = " + num(worst_b) + " (1e-3), |c2 + 1| = " +
               num(std::abs(c2.value - complex(-1.0, 0.0))) + " (1e-3)",
           secs, 60.0);
}

void criterion_3_ex2_end_to_end() {
    Timer t;
    const auto& e = hn2::corpus_entry("ex2");
    const hn2::QuadratureConfig cfg{};

    const double grid_dev = max_on_grid([&](complex z1, complex z2) {
        return std::abs(hn2::evaluate(e.rep, z1, z2, cfg).value - e.closed_form(z1, z2));
    });

    auto q = [&](complex z1, complex z2) { return hn2::evaluate(e.rep, z1, z2, cfg).value; };
    const double a = hn2::extract_a(q);
    const hn2::LimitEstimate b1 = hn2::extract_b(q, 1);
    const hn2::LimitEstimate b2 = hn2::extract_b(q, 2);

    const double secs = t.seconds();
    const bool ok = grid_dev <= 1e-5 && std::abs(a - 2.0) <= 1e-4 &&
                    std::abs(b1.value - 1.0) <= 1e-3 && std::abs(b2.value) <= 1e-3 &&
                    b1.converged && b2.converged && secs < 120.0;
    report(3, "ex2 end-to-end (grid, a, b1, b2)", ok,
           "grid dev " + num(grid_dev) + " (1e-5), |a - 2| = " + num(std::abs(a - 2.0)) +
               " (1e-4), |b1 - 1| = " + num(std::abs(b1.value - 1.0)) + " (1e-3), |b2| = " +
               num(std::abs(b2.value)) + " (1e-3)",
           secs, 120.0);
}

void criterion_4_ex3_extraction() {
    Timer t;
    const auto& e = hn2::corpus_entry("ex3");
    const double a_expected = 7.0 + 5.0 / std::sqrt(2.0);

    // The kernel is purely imaginary on the diagonal anchor (i, i), so
    // Re q(i, i) reproduces the stored constant with no quadrature term.
    hn2::QuadratureConfig tight{};
    auto q_tight = [&](complex z1, complex z2) {
        return hn2::evaluate(e.rep, z1, z2, tight).value;
    };
    const double a = hn2::extract_a(q_tight);

    hn2::QuadratureConfig loose{};
    loose.abs_tol = 1e-7;
    loose.rel_tol = 1e-6;
    auto q = [&](complex z1, complex z2) { return hn2::evaluate(e.rep, z1, z2, loose).value; };
    const hn2::LimitEstimate b1 = hn2::extract_b(q, 1, hn2::StolzSchedule::standard(), 1e-4);
    const hn2::LimitEstimate b2 = hn2::extract_b(q, 2, hn2::StolzSchedule::standard(), 1e-4);

    hn2::QuadratureConfig graded{};
    graded.abs_tol = 2e-6;
    const double grid_dev = max_on_grid([&](complex z1, complex z2) {
        return std::abs(hn2::evaluate(e.rep, z1, z2, graded).value - e.closed_form(z1, z2));
    });

    std::string detail = "|a - (7 + 5/sqrt 2)| = " + num(std::abs(a - a_expected)) +
                         " (1e-6), |b1| = " + num(std::abs(b1.value)) + ", |b2| = " +
                         num(std::abs(b2.value)) + " (1e-3), grid dev " + num(grid_dev) +
                         " (1e-4)";
    bool ok = std::abs(a - a_expected) <= 1e-6 && std::abs(b1.value) <= 1e-3 &&
              std::abs(b2.value) <= 1e-3 && b1.converged && b2.converged && grid_dev <= 1e-4;

    // A failed agreement bound must surface the per-component scale fit
    // rather than pass silently.
    if (grid_dev > 1e-4) {
        const std::vector<complex> s1{complex(-2, 0.5), complex(0, 1), complex(2, 2)};
        const std::vector<complex> s2{complex(-1, 0.5), complex(1, 2)};
        const hn2::ComponentScaleFit fit =
            hn2::fit_component_scales(e.rep, e.closed_form, s1, s2, loose);
        std::string scales;
        for (std::size_t i = 0; i < fit.scales.size(); ++i)
            scales += (i ? ", " : "") + num(fit.scales[i]);
        detail += "; notation discrepancy, fitted component scales [" + scales +
                  "] reduce the misfit to " + num(fit.misfit_after);
        ok = false;
    }
    report(4, "ex3 extraction and evaluation", ok, detail, t.seconds());

    // Demonstrate the diagnostic on the catalogued alternate normalization
    // (product components scaled by pi); informational only.
    if (e.mismatched) {
        const std::vector<complex> s1{complex(-2, 0.5), complex(0, 1), complex(2, 2)};
        const std::vector<complex> s2{complex(-1, 0.5), complex(1, 2)};
        const hn2::ComponentScaleFit fit =
            hn2::fit_component_scales(*e.mismatched, e.closed_form, s1, s2, loose);
        std::string scales;
        for (std::size_t i = 0; i < fit.scales.size(); ++i)
            scales += (i ? ", " : "") + num(fit.scales[i]);
        info("4*. alternate ex3 normalization is a notation discrepancy: fitted component "
             "scales [" + scales + "] reduce the misfit from " + num(fit.misfit_before) +
             " to " + num(fit.misfit_after));
    }
}

void criterion_5_residual_discrimination() {
    Timer t;
    hn2::CertifyOptions opt;
    bool members_ok = true;
    std::string detail;
    for (const char* id : {"ex1", "ex2", "ex3"}) {
        const auto& e = hn2::corpus_entry(id);
        const hn2::CheckResult growth = hn2::check_growth(e.rep.mu, opt.quad);
        const hn2::CheckResult res = hn2::check_nevanlinna(e.rep.mu, opt, growth.value);
        const double normalized = res.value / std::max(1.0, growth.value);
        members_ok = members_ok && res.passed && normalized <= 1e-6;
        detail += std::string(id) + " " + num(normalized) + ", ";
    }

    const auto& delta = hn2::corpus_entry("delta_counterexample");
    const hn2::QuadOutcome probe =
        hn2::nevanlinna_residual(delta.rep.mu, complex(0, 2), complex(0, 2));
    const double delta_dev = std::abs(probe.value - complex(pi * pi / 4.0, 0.0));

    const double secs = t.seconds();
    report(5, "orthogonality residual discrimination", members_ok && delta_dev <= 1e-8 &&
           secs < 300.0,
           "normalized residuals " + detail + "(1e-6 each); point mass at (2i, 2i) gives |" +
               num(std::abs(probe.value)) + " - pi^2/4| = " + num(delta_dev) + " (1e-8)",
           secs, 300.0);
}

void criterion_6_disk_side() {
    Timer t;
    const hn2::QuadratureConfig cfg{};

    double worst_roundtrip = 0.0;
    for (const char* id : {"ex1", "delta_counterexample"}) {
        const auto& e = hn2::corpus_entry(id);
        const hn2::DiskRepresentation disk = hn2::rep_to_disk(e.rep);
        const double dev = max_on_grid([&](complex z1, complex z2) {
            const complex q = hn2::evaluate(e.rep, z1, z2, cfg).value;
            const complex f =
                hn2::disk_evaluate(disk, hn2::cayley(z1), hn2::cayley(z2), cfg).value;
            return std::abs(q - complex(0, 1) * f);
        });
        worst_roundtrip = std::max(worst_roundtrip, dev);
    }

    const auto& ex1 = hn2::corpus_entry("ex1");
    const hn2::TorusMeasure nu = hn2::plane_to_torus(ex1.rep.mu, ex1.rep.b1, ex1.rep.b2);
    const double mass = hn2::torus_mass(nu);
    hn2::CertifyOptions opt;
    opt.moment_tol = 1e-8;
    const hn2::CheckResult moments = hn2::check_disk_moments(nu, opt, mass);

    // A point mass at the torus corner angle (pi, pi) violates every mixed
    // moment; the (1, -1) moment is pure atom arithmetic.
    hn2::TorusMeasure bad;
    bad.interior.components.push_back(hn2::Atom2D{pi, pi, 4.0 * pi * pi});
    const hn2::QuadOutcome bad_moment = hn2::integrate_torus(
        bad,
        [](double s1, double s2) { return std::exp(complex(0, -1) * (s1 - s2)); },
        hn2::torus_moment_terms(1, -1), hn2::TorusHints{}, cfg);
    const double bad_dev = std::abs(bad_moment.value - complex(4.0 * pi * pi, 0.0));
    const hn2::CheckResult bad_check = hn2::check_disk_moments(bad, opt, 4.0 * pi * pi);

    const bool ok = worst_roundtrip <= 1e-6 && moments.passed && bad_dev <= 1e-10 &&
                    !bad_check.passed;
    report(6, "disk transport consistency", ok,
           "round-trip dev " + num(worst_roundtrip) + " (1e-6); ex1 moments up to order 5: " +
               num(moments.value) + " <= " + num(moments.threshold) +
               "; corner atom moment |(1,-1) - 4 pi^2| = " + num(bad_dev) +
               " (1e-10) and the moment check rejects it",
           t.seconds());
}

void criterion_7_stieltjes() {
    Timer t;
    const auto& ex1 = hn2::corpus_entry("ex1");
    hn2::InversionOptions opt;
    opt.quad.abs_tol = 1e-8;
    opt.quad.rel_tol = 1e-7;

    const hn2::TestFunction canonical = hn2::make_test_function("canonical");
    const hn2::InversionResult est =
        hn2::stieltjes_functional(ex1.closed_form, canonical, ex1.inversion_hints, opt);
    const double rel = std::abs(est.value - pi * pi) / (pi * pi);

    // Linearity in q at fixed psi.
    auto qa = [](complex z1, complex z2) { return -1.0 / z2 - 0.5 / z1; };
    auto qb = [](complex z1, complex z2) { return -1.0 / (z1 + z2); };
    const double alpha = 0.7, beta = 1.3;
    auto qc = [&](complex z1, complex z2) { return alpha * qa(z1, z2) + beta * qb(z1, z2); };
    const hn2::TestFunction bump = hn2::make_test_function("rational_bump");
    const double fa = hn2::stieltjes_functional(qa, bump, {}, opt).value;
    const double fb = hn2::stieltjes_functional(qb, bump, {}, opt).value;
    const double fc = hn2::stieltjes_functional(qc, bump, {}, opt).value;
    const double lin_dev = std::abs(fc - (alpha * fa + beta * fb)) /
                           std::max(1.0, std::abs(fc));

    // Non-negativity across the registry for a function of the class.
    double most_negative = 0.0;
    for (const char* name : {"canonical", "gaussian", "rational_bump"}) {
        const hn2::TestFunction psi = hn2::make_test_function(name);
        const double v =
            hn2::stieltjes_functional(ex1.closed_form, psi, ex1.inversion_hints, opt).value;
        most_negative = std::min(most_negative, v);
    }

    const double secs = t.seconds();
    const bool ok = est.converged && rel <= 0.01 && lin_dev <= 1e-6 &&
                    most_negative >= -1e-8 && secs < 120.0;
    report(7, "Stieltjes pairing", ok,
           "canonical estimate " + num(est.value) + ", relative error " + num(rel) +
               " (0.01); linearity dev " + num(lin_dev) + " (1e-6); min pairing " +
               num(most_negative) + " (>= -1e-8)",
           secs, 120.0);
}

void criterion_8_atom_and_mass_limits() {
    Timer t;
    const auto& ex1 = hn2::corpus_entry("ex1");
    const auto& ex2 = hn2::corpus_entry("ex2");
    const auto& delta = hn2::corpus_entry("delta_counterexample");
    const auto& constant = hn2::corpus_entry("const_real");

    const hn2::LimitEstimate atom1 = hn2::atom_via_limit(ex1.closed_form, 0.0, 0.0);
    const hn2::LimitEstimate atom2 = hn2::atom_via_limit(ex2.closed_form, 0.0, 0.0);
    const hn2::LimitEstimate atom_delta = hn2::atom_via_limit(delta.closed_form, 0.0, 0.0);
    const double delta_dev = std::abs(atom_delta.value - complex(pi * pi, 0.0));

    const hn2::LimitEstimate mass_ex1 = hn2::mass_via_limit(ex1.closed_form);
    const hn2::LimitEstimate mass_const = hn2::mass_via_limit(constant.closed_form);

    const bool ok = std::abs(atom1.value) <= 1e-3 && std::abs(atom2.value) <= 1e-3 &&
                    delta_dev <= 1e-4 && atom_delta.converged && mass_ex1.diverged &&
                    mass_const.converged && std::abs(mass_const.value) <= 1e-8;
    report(8, "atom probes and mass limits", ok,
           "|atom(ex1)| = " + num(std::abs(atom1.value)) + ", |atom(ex2)| = " +
               num(std::abs(atom2.value)) + " (1e-3); point-mass probe |" +
               num(std::abs(atom_delta.value)) + " - pi^2| = " + num(delta_dev) +
               " (1e-4); mass limit diverges for ex1 = " +
               (mass_ex1.diverged ? "yes" : "no") + "; constant gives " +
               num(std::abs(mass_const.value)) + " (1e-8)",
           t.seconds());
}

std::string capture(const std::string& cmd, int& exit_code) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion_9_determinism() {
    Timer t;
    const std::string cmd = std::string(HN2_CLI_PATH) + " corpus run ex1 2>/dev/null";
    int code1 = -1, code2 = -1;
    const std::string run1 = capture(cmd, code1);
    const std::string run2 = capture(cmd, code2);
    const bool ok = code1 == 0 && code2 == 0 && !run1.empty() && run1 == run2;
    report(9, "byte-identical repeated corpus run", ok,
           "exit codes " + std::to_string(code1) + "/" + std::to_string(code2) + ", " +
               std::to_string(run1.size()) + " bytes, outputs " +
               (run1 == run2 ? "identical" : "differ"),
           t.seconds());
}

}   // namespace

int main() {
    criterion_1_kernel_identity();
    criterion_2_ex1_end_to_end();
    criterion_3_ex2_end_to_end();
    criterion_4_ex3_extraction();
    criterion_5_residual_discrimination();
    criterion_6_disk_side();
    criterion_7_stieltjes();
    criterion_8_atom_and_mass_limits();
    criterion_9_determinism();
    std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
