#include "leoshare/fading.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "leoshare/units.hpp"

namespace leoshare {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Rising factorial (x)_n.
double pochhammer(double x, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= x + i;
    return p;
}

}  // namespace

ShadowedRicianParams::ShadowedRicianParams(int m, double b, double omega)
    : m_(m), b_(b), omega_(omega) {
    if (m < 1) throw std::domain_error("Shadowed-Rician m must be a positive integer");
    if (!(b > 0.0)) throw std::domain_error("Shadowed-Rician b must be positive");
    if (!(omega >= 0.0)) throw std::domain_error("Shadowed-Rician omega must be non-negative");

    const double two_bm = 2.0 * b * m;
    beta_ = 1.0 / (2.0 * b);
    c_sr_ = omega / (2.0 * b * (two_bm + omega));
    if (!(beta_ > c_sr_)) throw std::domain_error("Shadowed-Rician parameters need beta > c");

    const double lead = std::pow(two_bm / (two_bm + omega), m) * beta_;
    const double rate = beta_ - c_sr_;
    zeta_.resize(static_cast<std::size_t>(m));
    weights_.resize(static_cast<std::size_t>(m));
    for (int z = 0; z < m; ++z) {
        const double fz = factorial(z);
        const double sign = (z % 2 == 0) ? 1.0 : -1.0;
        zeta_[z] = lead * sign * pochhammer(1.0 - m, z) * std::pow(c_sr_, z) / (fz * fz);
        weights_[z] = zeta_[z] * fz / std::pow(rate, z + 1);
    }
    const double norm = normalization();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::domain_error("Shadowed-Rician series fails normalisation: sum = " + std::to_string(norm));
    }
}

double ShadowedRicianParams::normalization() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

double ShadowedRicianParams::mean_power() const {
    double s = 0.0;
    for (int z = 0; z < m_; ++z) s += weights_[z] * (z + 1) / rate();
    return s;
}

double ShadowedRicianParams::mean_log_power() const {
    double s = 0.0;
    for (int z = 0; z < m_; ++z) s += weights_[z] * (boost::math::digamma(z + 1.0) - std::log(rate()));
    return s;
}

NakagamiParams::NakagamiParams(int m_t) : m(m_t) {
    if (m_t < 1) throw std::domain_error("Nakagami m must be a positive integer");
}

double NakagamiParams::mean_log_power() const {
    return boost::math::digamma(static_cast<double>(m)) - std::log(static_cast<double>(m));
}

double sr_amplitude_pdf(const ShadowedRicianParams& p, double x) {
    if (x <= 0.0 || !std::isfinite(x)) return 0.0;
    const double x2 = x * x;
    const double two_bm = 2.0 * p.b() * p.m();
    const double arg = p.c_sr() * x2;
    const int n = p.m() - 1;
    // The polynomial below is bounded by (1 + arg)^n.
    if (-p.rate() * x2 + n * std::log1p(arg) + std::log(x / p.b()) < -745.0) return 0.0;
    // Kummer: exp(-x^2/2b) 1F1(m; 1; a) = exp(-(beta - c) x^2) 1F1(1 - m; 1; -a), and
    // 1F1(-n; 1; -a) = sum_k C(n, k) a^k / k! is a polynomial.
    double poly = 0.0;
    double term = 1.0;
    for (int k = 0; k <= n; ++k) {
        poly += term;
        term *= arg * (n - k) / ((k + 1.0) * (k + 1.0));
    }
    return std::pow(two_bm / (two_bm + p.omega()), p.m()) * (x / p.b()) * std::exp(-p.rate() * x2) * poly;
}

double sr_power_pdf(const ShadowedRicianParams& p, double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return p.zeta()[0];
    if (!std::isfinite(x)) return 0.0;
    const double lx = std::log(x);
    double s = 0.0;
    for (int z = 0; z < p.m(); ++z) {
        if (p.zeta()[z] > 0.0) s += std::exp(std::log(p.zeta()[z]) + z * lx - p.rate() * x);
    }
    return s;
}

double sr_power_ccdf(const ShadowedRicianParams& p, double t) {
    if (t <= 0.0) return 1.0;
    const double kt = p.rate() * t;
    double total = 0.0;
    double partial = 0.0;  // sum_{v<=z} (kt)^v / v!
    double term = 1.0;
    for (int z = 0; z < p.m(); ++z) {
        if (z > 0) term *= kt / z;
        partial += term;
        total += p.weights()[z] * partial;
    }
    return total * std::exp(-kt);
}

double sr_laplace_factor(const ShadowedRicianParams& p, double u) {
    return sr_laplace_factor_derivative(p, u, 0);
}

double sr_laplace_factor_derivative(const ShadowedRicianParams& p, double u, int k) {
    const double denom = p.rate() + u;
    double s = 0.0;
    for (int z = 0; z < p.m(); ++z) {
        // zeta(z) Gamma(z+1+k) / (rate + u)^(z+1+k), written via the weights to keep magnitudes tame.
        const double ratio = p.rate() / denom;
        s += p.weights()[z] * std::pow(ratio, z + 1) * pochhammer(z + 1.0, k) / std::pow(denom, k);
    }
    return (k % 2 == 0) ? s : -s;
}

double sr_laplace_complement(const ShadowedRicianParams& p, double u) {
    const double l = std::log1p(u / p.rate());
    double s = 0.0;
    for (int z = 0; z < p.m(); ++z) s += p.weights()[z] * -std::expm1(-(z + 1) * l);
    return s;
}

double nakagami_laplace_complement(const NakagamiParams& p, double u) {
    return -std::expm1(-p.m * std::log1p(u / p.m));
}

double nakagami_laplace_factor(const NakagamiParams& p, double u) {
    return std::pow(1.0 + u / p.m, -p.m);
}

double nakagami_laplace_factor_derivative(const NakagamiParams& p, double u, int k) {
    const double m = p.m;
    const double v = pochhammer(m, k) / std::pow(m, k) * std::pow(1.0 + u / m, -(m + k));
    return (k % 2 == 0) ? v : -v;
}

double sample_sr_power(const ShadowedRicianParams& p, RngStream& rng) {
    double pick = rng.uniform();
    int z = 0;
    for (; z < p.m() - 1; ++z) {
        pick -= p.weights()[z];
        if (pick < 0.0) break;
    }
    std::gamma_distribution<double> g(z + 1.0, 1.0 / p.rate());
    return g(rng);
}

double sample_sr_power_physical(const ShadowedRicianParams& p, RngStream& rng) {
    double los = 0.0;
    if (p.omega() > 0.0) {
        std::gamma_distribution<double> g(static_cast<double>(p.m()), p.omega() / p.m());
        los = std::sqrt(g(rng));
    }
    const double phase = 2.0 * kPi * rng.uniform();
    std::normal_distribution<double> n(0.0, std::sqrt(p.b()));
    const double re = los * std::cos(phase) + n(rng);
    const double im = los * std::sin(phase) + n(rng);
    return re * re + im * im;
}

double sample_nakagami_power(const NakagamiParams& p, RngStream& rng) {
    std::gamma_distribution<double> g(static_cast<double>(p.m), 1.0 / p.m);
    return g(rng);
}

}  // namespace leoshare
