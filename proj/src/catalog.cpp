#include "backflow/catalog.hpp"

#include <cmath>

#include "backflow/fluxspec.hpp"

namespace backflow {

namespace {

MomentumProfile sampled_profile(const HalfLineGrid& grid, const std::function<cplx(double)>& f,
                                bool unit_normalize) {
    GridSampled g;
    g.grid = grid;
    g.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) g.values[i] = f(grid.nodes[i]);
    if (unit_normalize) {
        double n2 = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            n2 += grid.weights[i] * std::norm(g.values[i]);
        const double c = 1.0 / std::sqrt(n2);
        for (auto& v : g.values) v *= c;
    }
    return g;
}

CatalogEntry gaussian_entry() {
    CatalogEntry e;
    e.name = "gaussian_0684";
    MomentumState s;
    s.profile = GaussianF{1.0};
    s.a = {0.684, 0.0};
    s.family_factor = true;
    e.state = normalize(std::move(s));
    e.has_backflow = true;
    e.notes = "(a - p) exp(-p^2) with a at the most negative flux; "
              "flux ~ -0.01573 over the central negative lobe";
    e.split = FamilySplit{{0.684, 0.0},
                          sampled_profile(build_grid(512, 1.0),
                                          [](double p) { return cplx{std::exp(-p * p), 0.0}; },
                                          true)};
    return e;
}

CatalogEntry bracken_melloy_entry() {
    CatalogEntry e;
    e.name = "bracken_melloy";
    const double K = 1.0;
    MomentumState s;
    s.profile = BrackenMelloyState{K};
    s.family_factor = false;
    e.state = normalize(std::move(s));
    e.has_backflow = true;
    e.notes = "two-exponential state 18/sqrt(35K) p (e^{-p/K} - e^{-p/2K}/6), K = 1";
    // The state vanishes at p = 2K ln 6; splitting there keeps f regular.
    const double a = 2.0 * K * std::log(6.0);
    const MomentumProfile base = s.profile;
    e.split = FamilySplit{
        {a, 0.0},
        sampled_profile(build_grid(1024, 2.0 * K),
                        [a, base](double p) { return profile_value(base, p) / (a - p); },
                        true)};
    return e;
}

CatalogEntry eveson_entry() {
    CatalogEntry e;
    e.name = "eveson";
    const double p0 = 1.0;
    MomentumState s;
    s.profile = EvesonTruncated{p0};
    s.family_factor = false;
    e.state = normalize(std::move(s));
    e.has_backflow = true;
    e.notes = "truncated linear state N (sqrt(3) p - p0) on (0, p0], p0 = 1";
    // sqrt(3) p - p0 = -sqrt(3) (p0/sqrt(3) - p): a = p0/sqrt(3), f constant.
    e.split = FamilySplit{
        {p0 / std::sqrt(3.0), 0.0},
        sampled_profile(build_grid(512, p0, GridScheme::TruncatedUniform),
                        [p0](double p) { return cplx{p <= p0 ? -1.0 / std::sqrt(p0) : 0.0, 0.0}; },
                        true)};
    return e;
}

CatalogEntry penz_entry(int n) {
    CatalogEntry e;
    e.name = "penz_numeric";
    const auto r = bracken_melloy_bound(n, 4.0, 0.0, 1.0);
    e.state = r.state;
    e.has_backflow = true;
    e.notes = "flux-operator eigenvector at the most negative eigenvalue, window (0,1), n = " +
              std::to_string(n);
    return e;
}

}  // namespace

std::vector<CatalogEntry> catalog(int penz_n) {
    std::vector<CatalogEntry> v;
    v.push_back(gaussian_entry());
    v.push_back(bracken_melloy_entry());
    v.push_back(eveson_entry());
    v.push_back(penz_entry(penz_n));
    return v;
}

CatalogEntry catalog_entry(const std::string& name, int penz_n) {
    if (name == "gaussian_0684") return gaussian_entry();
    if (name == "bracken_melloy") return bracken_melloy_entry();
    if (name == "eveson") return eveson_entry();
    if (name == "penz_numeric") return penz_entry(penz_n);
    throw std::invalid_argument("catalog: unknown state '" + name + "'");
}

}  // namespace backflow
