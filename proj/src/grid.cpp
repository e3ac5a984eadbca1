#include "backflow/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace backflow {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

HalfLineGrid build_grid(int n, double L, GridScheme scheme) {
    if (n < 2) throw std::invalid_argument("build_grid: n must be >= 2");
    if (!(L > 0.0)) throw std::invalid_argument("build_grid: L must be positive");

    HalfLineGrid g;
    g.map_scale = L;
    g.scheme = scheme;
    g.nodes.resize(n);
    g.weights.resize(n);

    if (scheme == GridScheme::TruncatedUniform) {
        const double h = L / n;
        for (int i = 0; i < n; ++i) {
            g.nodes[i] = (i + 0.5) * h;
            g.weights[i] = h;
        }
        return g;
    }

    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * (x[i] + 1.0);
        const double wu = 0.5 * w[i];
        const double om = 1.0 - u;
        g.nodes[i] = L * u / om;
        g.weights[i] = wu * L / (om * om);
    }
    return g;
}

}  // namespace backflow
