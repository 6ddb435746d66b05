// quadrature.hpp: Gauss-Hermite and Gauss-Legendre rules.

#pragma once

#include "bosonet/types.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace bosonet::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const noexcept { return nodes.size(); }
};

// Physicists' Gauss-Hermite rule: int f(x) exp(-x^2) dx ~ sum w_i f(x_i).
// Newton iteration on the orthonormal Hermite recurrence, stable for a few hundred nodes.
inline Rule gauss_hermite(std::size_t n) {
    require(n >= 1, Errc::InvalidArgument, "gauss_hermite: need at least one node");
    constexpr double kPiQuarter = 0.7511255444649425;  // pi^{-1/4}
    Rule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double dn = static_cast<double>(n);
    const std::size_t half = (n + 1) / 2;
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * dn + 1.0) - 1.85575 * std::pow(2.0 * dn + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(dn, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = kPiQuarter;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * dn) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

// Cached rules; safe to call from several threads.
inline const Rule& gauss_hermite_cached(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, Rule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_hermite(n)).first;
    return it->second;
}

// Gauss-Legendre rule on [-1, 1].
inline Rule gauss_legendre(std::size_t n) {
    require(n >= 1, Errc::InvalidArgument, "gauss_legendre: need at least one node");
    Rule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = ((2.0 * dj + 1.0) * z * p2 - dj * p3) / (dj + 1.0);
            }
            pp = dn * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

// Composite Gauss-Legendre integral of f over [0, inf) through x = scale * u / (1 - u).
template <class F>
double integrate_half_line(F&& f, double scale, std::size_t panels = 64, std::size_t order = 16) {
    const Rule rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) / static_cast<double>(panels);
        const double b = static_cast<double>(p + 1) / static_cast<double>(panels);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double u = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
            const double jac = scale / ((1.0 - u) * (1.0 - u));
            total += 0.5 * (b - a) * rule.weights[i] * jac * f(scale * u / (1.0 - u));
        }
    }
    return total;
}

}  // namespace bosonet::quad
