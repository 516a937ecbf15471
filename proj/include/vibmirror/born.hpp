#ifndef VIBMIRROR_BORN_HPP
#define VIBMIRROR_BORN_HPP

namespace vibmirror {

// First-order (golden rule) transition probability between mirror
// eigenstates with scaled momenta P_i, P_f:
//
//   W = (eps^2 pi^2 / 64) sinh(pi P_i) sinh(pi P_f)
//       * [ (P_i+P_f)(P_i-P_f) / (sinh(pi(P_i+P_f)/2) sinh(pi(P_i-P_f)/2)) ]^2
//
// Evaluated in log space, since sinh(100 pi) overflows.  The removable
// P_i = P_f singularity is filled with its analytic limit.
double born_probability(double P_i, double P_f, double epsilon);

// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x);

// Exact final momentum of sideband order n: sqrt(P_i^2 + 2 n P_i Q).
// Throws std::domain_error when the channel is energetically closed.
double sideband_momentum_exact(double P_i, double Q, int n);
bool sideband_open(double P_i, double Q, int n);

// First-order sidebands n = +-1 with the p_i/p_f flux normalization used
// when comparing against amplitude-normalized spectra.
struct BornResult {
    double W_plus, W_minus;            // raw golden-rule probabilities
    double W_plus_flux, W_minus_flux;  // multiplied by p_i/p_f
    double P_f_plus, P_f_minus;
    bool perturbative_ok;              // false when max(W) > 0.1
};
BornResult born_first_sidebands(double P_i, double Q, double epsilon);

// Upper/lower sideband weight ratio: approximate exp(pi Q^2/P_i) and the
// exact value from the golden-rule expression.
struct AsymmetryRatio {
    double approx;
    double exact;
};
AsymmetryRatio asymmetry_ratio(double P_i, double Q);

}  // namespace vibmirror

#endif
