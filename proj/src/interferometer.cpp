#include "vibmirror/interferometer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vibmirror/semiclassical.hpp"

namespace vibmirror {

namespace {

std::complex<double> phase(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

std::string InterferometerPlan::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"u\":[" << u[0] << "," << u[1] << "," << u[2] << "],"
       << "\"phi\":[" << phi[0] << "," << phi[1] << "," << phi[2] << "],"
       << "\"epsilon\":[" << epsilon[0] << "," << epsilon[1] << "," << epsilon[2] << "],"
       << "\"alpha\":[" << alpha_AB << "," << alpha_BC << "," << alpha_AD << "," << alpha_DC
       << "],"
       << "\"symmetric\":" << (symmetric ? "true" : "false") << ","
       << "\"theta\":" << theta() << "}";
    return os.str();
}

ChannelAmplitudes channel_amplitudes(const InterferometerPlan& plan,
                                     const std::array<SidebandTriplet, 3>& b) {
    const std::complex<double> path1 = phase(plan.alpha_AB + plan.alpha_BC);
    const std::complex<double> path2 = phase(plan.alpha_AD + plan.alpha_DC);

    ChannelAmplitudes out;
    out.carrier = b[0].a_zero * b[1].a_plus * b[2].a_minus * phase(plan.phi[1] - plan.phi[2]) *
                      path1 +
                  b[0].a_plus * b[1].a_minus * b[2].a_zero * phase(plan.phi[0] - plan.phi[1]) *
                      path2;
    out.up = b[0].a_zero * b[1].a_plus * b[2].a_zero * phase(plan.phi[1]) * path1 +
             b[0].a_plus * b[1].a_minus * b[2].a_plus *
                 phase(plan.phi[0] - plan.phi[1] + plan.phi[2]) * path2;
    out.fringe = fringe_from_triplets(b, plan.theta());
    return out;
}

double fringe_from_triplets(const std::array<SidebandTriplet, 3>& b, double theta) {
    const std::complex<double> prod = (b[0].a_zero * std::conj(b[0].a_plus)) *
                                      (b[1].a_plus * std::conj(b[1].a_minus)) *
                                      (b[2].a_minus * std::conj(b[2].a_zero));
    return 2.0 * (prod * phase(theta)).real();
}

double fringe_max_from_triplets(const std::array<SidebandTriplet, 3>& b) {
    for (const auto& t : b)
        if (std::abs(t.a_minus) < 1e-12 || std::abs(t.a_zero) < 1e-12 ||
            std::abs(t.a_plus) < 1e-12)
            throw std::domain_error("fringe_max_from_triplets: sideband amplitude below noise floor");
    const std::complex<double> prod = (b[0].a_zero * std::conj(b[0].a_plus)) *
                                      (b[1].a_plus * std::conj(b[1].a_minus)) *
                                      (b[2].a_minus * std::conj(b[2].a_zero));
    return 2.0 * std::abs(prod);
}

double fringe_amplitude(double u1, double u2, double u3, double theta) {
    const double j1 = bessel_j(0, u1) * bessel_j(1, u1);
    const double j2 = bessel_j(1, u2);
    const double j3 = bessel_j(0, u3) * bessel_j(1, u3);
    return 2.0 * j1 * j2 * j2 * j3 * std::cos(theta);
}

namespace {

// Deterministic 1-D maximization: coarse grid then golden-section.
template <typename F>
double maximize(F f, double lo, double hi) {
    const int n_grid = 3000;
    double best_x = lo, best_f = f(lo);
    for (int i = 1; i <= n_grid; ++i) {
        const double x = lo + (hi - lo) * i / n_grid;
        const double y = f(x);
        if (y > best_f) {
            best_f = y;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - (hi - lo) / n_grid);
    double b = std::min(hi, best_x + (hi - lo) / n_grid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

FringeOptimum optimize_fringe() {
    // F separates: |F| = 2 [J0(u1)J1(u1)] [J1(u2)]^2 [J0(u3)J1(u3)] at theta = 0.
    const double u1 = maximize([](double u) { return bessel_j(0, u) * bessel_j(1, u); }, 0.0, 3.0);
    const double u2 = maximize([](double u) { return bessel_j(1, u) * bessel_j(1, u); }, 0.0, 3.0);
    FringeOptimum opt;
    opt.u1 = opt.u3 = u1;
    opt.u2 = u2;
    opt.F_max = std::fabs(fringe_amplitude(u1, u2, u1, 0.0));
    return opt;
}

InterferometerPlan plan_from_physics(double P_i, double Q, const std::array<double, 3>& eps,
                                     const std::array<double, 3>& phi) {
    InterferometerPlan plan;
    plan.epsilon = eps;
    plan.phi = phi;
    const FringeOptimum opt = optimize_fringe();
    const std::array<double, 3> target{opt.u1, opt.u2, opt.u3};
    for (int m = 0; m < 3; ++m) {
        if (eps[m] < 0.0 || eps[m] > 1.0)
            throw std::domain_error("plan_from_physics: depths must lie in [0, 1]");
        plan.u[m] = modulation_index(P_i, Q, eps[m]);
        plan.off_target[m] = std::fabs(plan.u[m] - target[m]) > 0.10 * target[m];
    }
    return plan;
}

double intensity_phase_shift(double epsilon, double P_i) { return epsilon * P_i; }

}  // namespace vibmirror
