#include "backflow/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "backflow/grid.hpp"

namespace backflow {
namespace detail {

namespace {
struct RulePair {
    std::vector<double> nodes, weights;
};

const RulePair& rule(int order) {
    static std::mutex mu;
    static std::map<int, RulePair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) {
        RulePair r;
        gauss_legendre(order, r.nodes, r.weights);
        it = cache.emplace(order, std::move(r)).first;
    }
    return it->second;
}
}  // namespace

const std::vector<double>& gl_nodes(int order) { return rule(order).nodes; }
const std::vector<double>& gl_weights(int order) { return rule(order).weights; }

}  // namespace detail

std::vector<double> phase_panels(double a, double b, double c2, double c1,
                                 std::size_t max_panels) {
    std::vector<double> edges{a};
    if (!(b > a)) {
        edges.push_back(b);
        return edges;
    }
    const double span_cap = 4.0 * M_PI;
    const double len = b - a;
    double p = a;
    while (p < b) {
        const double deriv = std::abs(2.0 * c2 * p + c1);
        double h = span_cap / (deriv + std::sqrt(std::abs(c2) * span_cap) + 1e-300);
        h = std::min(h, len / 4.0);
        if (edges.size() >= max_panels)
            throw accuracy_error("oscillatory quadrature: phase panel budget exceeded", p,
                                 static_cast<double>(edges.size()));
        p = std::min(p + h, b);
        edges.push_back(p);
    }
    return edges;
}

}  // namespace backflow
