#pragma once

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <string>

namespace leoshare {

enum class GammaTransform {
    Rational,  // gamma = t / (1 - t) on t in (0, 1), adaptive Gauss-Kronrod
    ExpSinh,   // direct half-line integration with the exp-sinh rule
};

struct QuadratureConfig {
    double outer_rel_tol = 1e-5;   // SINR-threshold integral
    double distance_rel_tol = 1e-6;  // expectations over the serving distance
    double radial_rel_tol = 1e-7;    // interference integrals
    double abs_tol = 1e-300;
    double probability_abs_tol = 1e-9;  // absolute floor for coverage probabilities
    double se_abs_tol = 1e-5;           // absolute floor for spectral efficiency, bit/s/Hz
    unsigned max_intervals = 2000;  // subdivision budget per integral
    GammaTransform gamma_transform = GammaTransform::Rational;

    void validate() const {
        if (!(outer_rel_tol > 0.0 && distance_rel_tol > 0.0 && radial_rel_tol > 0.0 && abs_tol > 0.0 &&
              probability_abs_tol >= 0.0 && se_abs_tol >= 0.0 && max_intervals > 0)) {
            throw std::invalid_argument("quadrature tolerances must be positive");
        }
    }
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(std::string integral, double value, double error)
        : std::runtime_error(message(integral, value, error)),
          integral_(std::move(integral)) {}

    const std::string& integral() const { return integral_; }

private:
    static std::string message(const std::string& integral, double value, double error) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (value %.6g, error estimate %.3g)", value, error);
        return "quadrature did not converge for " + integral + buf;
    }

    std::string integral_;
};

// Globally adaptive 31-point Gauss-Kronrod over [a, b]. The interval with the largest
// error estimate is bisected until the total error drops below
// max(abs_floor, rel_tol * L1) or the interval budget runs out; in the latter case
// QuadratureError is thrown unless the error is within ten times the target.
template <class F>
double integrate_checked(F&& f, double a, double b, double rel_tol, const QuadratureConfig& q,
                         const char* name, double abs_floor = 0.0) {
    if (!(b > a)) return 0.0;
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Piece {
        double a, b, value, error, l1;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    const auto eval = [&](double lo, double hi) {
        Piece p{lo, hi, 0.0, 0.0, 0.0};
        p.value = Rule::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
        return p;
    };
    std::priority_queue<Piece> heap;
    heap.push(eval(a, b));
    double value = heap.top().value;
    double err = heap.top().error;
    double l1 = heap.top().l1;
    const auto target = [&](double scale) { return std::max({q.abs_tol, abs_floor, scale * rel_tol * l1}); };
    while (std::isfinite(value) && err > target(1.0) && heap.size() < q.max_intervals) {
        const Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const Piece left = eval(worst.a, mid);
        const Piece right = eval(mid, worst.b);
        heap.push(left);
        heap.push(right);
        // Re-sum from scratch now and then to shed accumulated rounding in the running totals.
        if (heap.size() % 64 == 0) {
            auto copy = heap;
            value = err = l1 = 0.0;
            while (!copy.empty()) {
                value += copy.top().value;
                err += copy.top().error;
                l1 += copy.top().l1;
                copy.pop();
            }
        } else {
            value += left.value + right.value - worst.value;
            err += left.error + right.error - worst.error;
            l1 += left.l1 + right.l1 - worst.l1;
        }
    }
    err = std::max(err, 0.0);
    if (!std::isfinite(value) || err > target(10.0)) throw QuadratureError(name, value, err);
    return value;
}

}  // namespace leoshare
