#include "ks.hpp"

#include <algorithm>
#include <cmath>

namespace leoshare::testing {

double kolmogorov_survival(double t) {
    if (t <= 0.0) return 1.0;
    // For small t the alternating series converges slowly; use the Jacobi theta form instead.
    if (t < 1.0) {
        const double pi = 3.14159265358979323846;
        const double a = pi * pi / (8.0 * t * t);
        double s = 0.0;
        for (int k = 1; k <= 50; k += 2) s += std::exp(-a * k * k);
        return 1.0 - std::sqrt(2.0 * pi) / t * s;
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        s += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - i / n, (i + 1) / n - f});
    }
    const double sn = std::sqrt(n);
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_survival(d * (sn + 0.12 + 0.11 / sn));
    return r;
}

}  // namespace leoshare::testing
