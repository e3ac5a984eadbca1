#pragma once

#include <cstddef>
#include <vector>

namespace backflow {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

enum class GridScheme {
    MappedGauss,       ///< p = L u/(1-u) over Gauss-Legendre on (0,1)
    TruncatedUniform,  ///< midpoint rule on (0, L], zero beyond
};

/// Quadrature rule for integrals over the momentum half-line (0, inf).
///
/// MappedGauss compresses the half-line through the algebraic map
/// p = L u/(1-u); it handles both the p -> 0 end and power-law tails
/// without a hard cutoff. TruncatedUniform is a plain midpoint rule on
/// (0, L], used where a uniform spacing is wanted (Nystrom matrices).
struct HalfLineGrid {
    std::vector<double> nodes;    // strictly increasing, all > 0
    std::vector<double> weights;  // all > 0
    double map_scale = 1.0;       // L of the map (or the cutoff, for uniform)
    GridScheme scheme = GridScheme::MappedGauss;

    std::size_t size() const { return nodes.size(); }
};

/// Build an n-point half-line rule. Throws std::invalid_argument for
/// n < 2 or L <= 0.
HalfLineGrid build_grid(int n, double L, GridScheme scheme = GridScheme::MappedGauss);

}  // namespace backflow
