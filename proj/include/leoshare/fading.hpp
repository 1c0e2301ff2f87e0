#pragma once

#include <vector>

#include "leoshare/rng.hpp"

namespace leoshare {

// Shadowed-Rician satellite fading with integer shadowing parameter m.
//
// For integer m the power PDF is a finite series
//   f_H(x) = sum_{z<m} zeta(z) x^z exp(-(beta - c_sr) x),
// i.e. a mixture of Gamma(z+1, beta - c_sr) laws with weights
//   w(z) = zeta(z) Gamma(z+1) / (beta - c_sr)^(z+1),   sum_z w(z) = 1.
//
// Note: the textbook statement of the coverage series writes Gamma(z) in the
// weight, which is undefined at z = 0. Integrating f_H over [t, inf) gives
// Gamma(z+1); that is what every routine here uses. The constructor checks
// the weights sum to one to 1e-10 and throws otherwise.
class ShadowedRicianParams {
public:
    ShadowedRicianParams(int m, double b, double omega);

    int m() const { return m_; }
    double b() const { return b_; }
    double omega() const { return omega_; }
    double beta() const { return beta_; }
    double c_sr() const { return c_sr_; }
    // beta - c_sr, the common exponential rate of the power PDF.
    double rate() const { return beta_ - c_sr_; }
    const std::vector<double>& zeta() const { return zeta_; }
    const std::vector<double>& weights() const { return weights_; }

    // sum_z zeta(z) Gamma(z+1) / (beta - c_sr)^(z+1); one up to round-off.
    double normalization() const;
    double mean_power() const;
    // E[ln H], used by the Jensen-type lower bound.
    double mean_log_power() const;

private:
    int m_;
    double b_;
    double omega_;
    double beta_;
    double c_sr_;
    std::vector<double> zeta_;
    std::vector<double> weights_;
};

// Nakagami-m terrestrial fading with unit mean power; power is Gamma(m, 1/m).
struct NakagamiParams {
    int m = 1;

    explicit NakagamiParams(int m_t = 1);
    double mean_log_power() const;
};

// Amplitude PDF via the confluent hypergeometric function 1F1(m; 1; .), evaluated in Kummer form
// where it reduces to a polynomial times a Gaussian.
double sr_amplitude_pdf(const ShadowedRicianParams& p, double x);

// Power PDF via the finite series.
double sr_power_pdf(const ShadowedRicianParams& p, double x);

// P[H >= t].
double sr_power_ccdf(const ShadowedRicianParams& p, double t);

// E[exp(-u H)] and its u-derivatives E[(-H)^k exp(-u H)].
double sr_laplace_factor(const ShadowedRicianParams& p, double u);
double sr_laplace_factor_derivative(const ShadowedRicianParams& p, double u, int k);

// 1 - E[exp(-u H)], accurate when u is tiny.
double sr_laplace_complement(const ShadowedRicianParams& p, double u);

// (1 + u/m)^(-m) = E[exp(-u H)] for H ~ Gamma(m, 1/m).
double nakagami_laplace_factor(const NakagamiParams& p, double u);
double nakagami_laplace_factor_derivative(const NakagamiParams& p, double u, int k);
double nakagami_laplace_complement(const NakagamiParams& p, double u);

// Draws from the Gamma mixture implied by the power series.
double sample_sr_power(const ShadowedRicianParams& p, RngStream& rng);

// Draws |A + S|^2 with a Nakagami-m line-of-sight amplitude A (mean power omega,
// uniform phase) and circular Gaussian scatter S of power 2b. Shares no code
// with the series, so it serves as an independent check on it.
double sample_sr_power_physical(const ShadowedRicianParams& p, RngStream& rng);

double sample_nakagami_power(const NakagamiParams& p, RngStream& rng);

}  // namespace leoshare
