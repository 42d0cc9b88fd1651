#include "pareto/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace pareto {

namespace {

// Implicit QL diagonalization of a symmetric tridiagonal matrix, tracking
// the first component of each eigenvector (Elhay-Kautsky / IQPACK scheme).
// diag has length n; offdiag holds the n-1 subdiagonal entries in
// offdiag[0..n-2]; first_component starts as e_1 and ends, per eigenvalue,
// as the first eigenvector component.
void tridiagonal_eigen(std::vector<double>& diag, std::vector<double>& offdiag,
                       std::vector<double>& first_component) {
    const std::size_t n = diag.size();
    if (n == 1) return;
    const double eps = std::numeric_limits<double>::epsilon();
    offdiag.resize(n, 0.0);
    offdiag[n - 1] = 0.0;

    for (std::size_t l = 1; l <= n; ++l) {
        std::size_t iter = 0;
        while (true) {
            std::size_t m = l;
            for (; m < n; ++m)
                if (std::fabs(offdiag[m - 1]) <=
                    eps * (std::fabs(diag[m - 1]) + std::fabs(diag[m])))
                    break;
            if (m == l) break;
            if (++iter > 64)
                throw std::runtime_error("gamma_quadrature: eigenvalue iteration failed");

            double p = diag[l - 1];
            double g = (diag[l] - p) / (2.0 * offdiag[l - 1]);
            double r = std::hypot(g, 1.0);
            g = diag[m - 1] - p + offdiag[l - 1] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0;
            p = 0.0;
            for (std::size_t ii = 1; ii <= m - l; ++ii) {
                const std::size_t i = m - ii;
                double f = s * offdiag[i - 1];
                const double b = c * offdiag[i - 1];
                if (std::fabs(f) >= std::fabs(g)) {
                    c = g / f;
                    r = std::hypot(c, 1.0);
                    offdiag[i] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::hypot(s, 1.0);
                    offdiag[i] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = diag[i] - p;
                r = (diag[i - 1] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i] = g + p;
                g = c * r - b;
                f = first_component[i];
                first_component[i] = s * first_component[i - 1] + c * f;
                first_component[i - 1] = c * first_component[i - 1] - s * f;
            }
            diag[l - 1] -= p;
            offdiag[l - 1] = g;
            offdiag[m - 1] = 0.0;
        }
    }

    // Ascending node order, permuting the components alongside.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t k = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (diag[j] < diag[k]) k = j;
        if (k != i) {
            std::swap(diag[i], diag[k]);
            std::swap(first_component[i], first_component[k]);
        }
    }
}

std::shared_ptr<const QuadratureRule> cached_rule(double shape, std::size_t point_count) {
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const QuadratureRule>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({shape, point_count});
        if (it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<QuadratureRule>(gamma_quadrature(shape, point_count));
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace({shape, point_count}, std::move(rule));
    (void)inserted;
    return it->second;
}

}  // namespace

QuadratureRule gamma_quadrature(double shape, std::size_t point_count) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma_quadrature: shape must be positive");
    if (point_count == 0) throw std::invalid_argument("gamma_quadrature: empty rule");

    // Jacobi matrix of the generalized Laguerre polynomials with
    // alpha = shape - 1, zeroth moment normalized to 1.
    const std::size_t n = point_count;
    std::vector<double> diag(n), offdiag(n, 0.0), first(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) diag[k] = 2.0 * static_cast<double>(k) + shape;
    for (std::size_t k = 0; k + 1 < n; ++k)
        offdiag[k] = std::sqrt(static_cast<double>(k + 1) * (static_cast<double>(k) + shape));
    first[0] = 1.0;

    tridiagonal_eigen(diag, offdiag, first);

    QuadratureRule rule;
    rule.nodes = std::move(diag);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) rule.weights[k] = first[k] * first[k];
    return rule;
}

double integrate_gamma(double shape, const std::function<double(double)>& f, double rel_tol) {
    constexpr std::size_t kStart = 64;
    constexpr std::size_t kCap = 4096;

    auto evaluate = [&](std::size_t points) {
        const auto rule = cached_rule(shape, points);
        double acc = 0.0;
        for (std::size_t k = 0; k < rule->nodes.size(); ++k)
            acc += rule->weights[k] * f(rule->nodes[k]);
        return acc;
    };

    double previous = evaluate(kStart);
    for (std::size_t points = 2 * kStart; points <= kCap; points *= 2) {
        const double current = evaluate(points);
        const double scale = std::max({std::fabs(current), std::fabs(previous), 1e-300});
        if (std::fabs(current - previous) <= rel_tol * scale) return current;
        previous = current;
    }
    return previous;
}

}  // namespace pareto
