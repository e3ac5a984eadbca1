#pragma once

#include <optional>
#include <string>
#include <vector>

#include "backflow/state.hpp"

namespace backflow {

/// Decomposition of a catalog state into the family form (a - p) f(p).
/// The split is not unique; the one recorded here places the zero of the
/// state at p = a so that f stays regular.
struct FamilySplit {
    cplx a{0.0, 0.0};
    MomentumProfile f;  // unit-normalized
};

struct CatalogEntry {
    std::string name;
    MomentumState state;  // normalized
    bool has_backflow = false;
    std::string notes;
    std::optional<FamilySplit> split;
};

/// Built-in states: gaussian_0684, bracken_melloy (K = 1), eveson (p0 = 1),
/// and penz_numeric (the maximizing flux-operator eigenvector at the given
/// Nystrom size).
std::vector<CatalogEntry> catalog(int penz_n = 256);

/// Lookup by name; throws std::invalid_argument for unknown names.
CatalogEntry catalog_entry(const std::string& name, int penz_n = 256);

}  // namespace backflow
