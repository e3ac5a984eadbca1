// Command-line surface: certify states, scan the Gaussian family, estimate
// the flux-operator bound, dump J/P curves, and run the sigma -> 0 limit.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "backflow/catalog.hpp"
#include "backflow/criterion.hpp"
#include "backflow/dynamics.hpp"
#include "backflow/errors.hpp"
#include "backflow/fluxspec.hpp"
#include "backflow/regcur.hpp"

namespace {

using namespace backflow;

constexpr int kExitInput = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitSolver = 4;

std::string num(double x) {
    if (x == 0.0) x = 0.0;  // print negative zero as 0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string cnum(cplx z) {
    return num(z.real()) + (z.imag() < 0.0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);  // LF line endings, always
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

MomentumState load_state(const std::string& catalog_name, const std::string& state_path,
                         int penz_n) {
    if (!catalog_name.empty()) return catalog_entry(catalog_name, penz_n).state;
    if (state_path.empty())
        throw std::invalid_argument("need --catalog <name> or --state <file>");
    std::ifstream in(state_path);
    if (!in) throw std::invalid_argument("cannot read state file: " + state_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return normalize(state_from_json(ss.str()));
}

void cmd_catalog(const std::string& out_path) {
    Output out(out_path);
    if (out_path.empty()) {
        for (const auto& e : catalog()) {
            out.stream() << e.name << "  backflow=" << (e.has_backflow ? "yes" : "no") << "  "
                         << e.notes << "\n";
        }
        return;
    }
    // JSON export: array of {name, has_backflow, state}
    out.stream() << "[\n";
    bool first = true;
    for (const auto& e : catalog()) {
        if (!first) out.stream() << ",\n";
        first = false;
        out.stream() << "{\"name\":\"" << e.name << "\",\"has_backflow\":"
                     << (e.has_backflow ? "true" : "false")
                     << ",\"state\":" << state_to_json(e.state) << "}";
    }
    out.stream() << "\n]\n";
}

void cmd_certify(const std::string& catalog_name, const std::string& state_path,
                 const std::string& out_path) {
    const MomentumState s = load_state(catalog_name, state_path, 256);
    Output out(out_path);
    std::ostream& os = out.stream();

    const MomentTriple m = moments(s.profile, s.units);
    const QuadraticForm q = quadratic_form(m);
    const BackflowVerdict v = decide(m);

    os << "moments: f0=" << cnum(m.f0) << " f1=" << cnum(m.f1) << " f2=" << cnum(m.f2)
       << (m.tail_warning ? "  [tail warning]" : "") << "\n";
    os << "quadratic form: A=" << num(q.A) << " B=" << cnum(q.B) << " C=" << num(q.C)
       << " D=" << num(q.discriminant) << "\n";
    os << "family analysis: achievable=" << (v.is_backflow ? "yes" : "no")
       << " condition_value=" << num(v.condition_value);
    if (v.optimal_a) os << " optimal_a=" << cnum(*v.optimal_a);
    if (v.unbounded_direction) os << " unbounded_direction=" << cnum(*v.unbounded_direction);
    if (v.real_window)
        os << " real_window=(" << num(v.real_window->first) << ","
           << num(v.real_window->second) << ")";
    os << "\n";

    const double J0 = current_at_origin(s, 0.0).J;
    os << "J(0)=" << num(J0) << "\n";
    const FluxReport rep = flux_over_negative_window(s);
    if (rep.window_found) {
        os << "negative window: t1=" << num(rep.t1) << " t2=" << num(rep.t2) << "\n";
        os << "flux=" << num(rep.flux) << " fraction_of_cbm=" << num(rep.fraction_of_cbm)
           << "\n";
    } else {
        os << "negative window: none\n";
        os << "flux=0 fraction_of_cbm=0\n";
    }
    const bool yes = J0 < 0.0 && rep.window_found && rep.flux < 0.0;
    os << "backflow: " << (yes ? "yes" : "no") << "\n";
}

void cmd_scan(double gamma0, double amin, double amax, int points, double im_a,
              const std::string& out_path) {
    if (points < 2) throw std::invalid_argument("scan: need at least 2 grid points");
    if (!(amax > amin)) throw std::invalid_argument("scan: empty a-grid");
    if (!(gamma0 > 0.0)) throw std::invalid_argument("scan: gamma0 must be positive");

    auto flux_at = [&](double are) -> FluxReport {
        MomentumState s;
        s.profile = GaussianF{gamma0};
        s.a = {are, im_a};
        s.family_factor = true;
        s = normalize(std::move(s));
        return flux_over_negative_window(s);
    };

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "a_re,a_im,t1,t2,flux,fraction_of_cbm\n";
    double best_a = amin;
    double best_flux = 0.0;
    for (int i = 0; i < points; ++i) {
        const double a = amin + (amax - amin) * i / (points - 1);
        const FluxReport r = flux_at(a);
        os << num(a) << "," << num(im_a) << "," << num(r.t1) << "," << num(r.t2) << ","
           << num(r.flux) << "," << num(r.fraction_of_cbm) << "\n";
        if (r.window_found && r.flux < best_flux) {
            best_flux = r.flux;
            best_a = a;
        }
    }
    if (best_flux < 0.0) {
        // golden-section refinement of the flux minimum around the grid argmin
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        const double step = (amax - amin) / (points - 1);
        double lo = best_a - step, hi = best_a + step;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = flux_at(x1).flux, f2 = flux_at(x2).flux;
        while (hi - lo > 1e-3) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = flux_at(x1).flux;
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = flux_at(x2).flux;
            }
        }
        best_a = 0.5 * (lo + hi);
        best_flux = flux_at(best_a).flux;
        std::cerr << "argmin a*gamma0 = " << num(best_a * gamma0)
                  << "  flux = " << num(best_flux)
                  << "  fraction_of_cbm = " << num(-best_flux / kBrackenMelloyConstant)
                  << "\n";
    } else {
        std::cerr << "no negative flux found on the grid\n";
    }
}

void cmd_bm_bound(const std::vector<int>& ns, double pmax_scale, double t1, double t2,
                  const std::string& export_path, const std::string& out_path) {
    if (ns.empty()) throw std::invalid_argument("bm-bound: need at least one n");
    Output out(out_path);
    std::ostream& os = out.stream();
    os << "n,umax,estimate\n";
    std::vector<double> est;
    BmBoundResult last;
    for (int n : ns) {
        last = bracken_melloy_bound(n, pmax_scale, t1, t2);
        est.push_back(last.estimate);
        os << n << "," << num(last.umax) << "," << num(last.estimate) << "\n";
    }
    if (est.size() >= 3) {
        const double d1 = est[est.size() - 2] - est[est.size() - 3];
        const double d2 = est[est.size() - 1] - est[est.size() - 2];
        const double extrap = est.back() + d2 * d2 / (d1 - d2);
        std::cerr << "extrapolated estimate = " << num(extrap) << "\n";
    }
    std::cerr << "estimate(n=" << ns.back() << ") = " << num(est.back()) << "\n";
    if (!export_path.empty()) {
        std::ofstream f(export_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open export file: " + export_path);
        f << state_to_json(last.state) << "\n";
    }
}

void cmd_curves(const std::string& catalog_name, const std::string& state_path, double tmin,
                double tmax, int points, const std::string& prefix) {
    if (points < 0) throw std::invalid_argument("curves: points must be >= 0");
    const MomentumState s = load_state(catalog_name, state_path, 256);
    Output jout(prefix.empty() ? "" : prefix + "_J.csv");
    Output pout(prefix.empty() ? "" : prefix + "_P.csv");
    jout.stream() << "t,J\n";
    pout.stream() << "t,P\n";
    for (int i = 0; i < points; ++i) {
        const double t =
            points == 1 ? tmin : tmin + (tmax - tmin) * i / (points - 1);
        jout.stream() << num(t) << "," << num(current_at_origin(s, t).J) << "\n";
        pout.stream() << num(t) << "," << num(probability_left(s, t)) << "\n";
    }
}

void cmd_limit(double gamma0, int steps, const std::string& rule_name, double sigma0,
               const std::string& state_path, const std::string& out_path) {
    MomentumProfile f = GaussianF{gamma0};
    if (!state_path.empty()) f = load_state("", state_path, 256).profile;
    const ARule rule = rule_name == "fixed" ? ARule::Fixed : ARule::Tracked;
    const LimitTrace tr = limit_procedure(f, steps, rule, Units{}, sigma0);

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "step,sigma,a_re,a_im,expectation,rescaled_expectation\n";
    for (const auto& st : tr.steps)
        os << st.step << "," << num(st.sigma) << "," << num(st.a.real()) << ","
           << num(st.a.imag()) << "," << num(st.expectation) << ","
           << num(st.rescaled_expectation) << "\n";
    if (tr.degenerate) os << "# degenerate limit: current vanishes\n";
    std::cerr << "limit current = " << num(tr.limit_current)
              << "  final relative deviation = " << num(tr.final_relative_deviation) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum backflow toolkit"};
    app.require_subcommand(1);

    std::string catalog_name, state_path, out_path, prefix, export_path, rule = "tracked";
    double gamma0 = 1.0, amin = 0.5, amax = 1.0, im_a = 0.0;
    double tmin = -5.0, tmax = 5.0, sigma0 = 0.0, pmax_scale = 4.0;
    std::vector<double> window{0.0, 1.0};
    std::vector<int> ns{256, 512, 1024};
    int points = 64, steps = 12;
    unsigned long seed = 0;
    app.add_option("--seed", seed, "RNG seed for randomized sweeps (reproducibility)");

    auto* c_cat = app.add_subcommand("catalog", "list built-in states");
    c_cat->add_option("--out", out_path, "write the catalog as JSON");

    auto* c_cert = app.add_subcommand("certify", "certify a state as a backflow state");
    c_cert->add_option("--catalog", catalog_name, "built-in state name");
    c_cert->add_option("--state", state_path, "state JSON file");
    c_cert->add_option("--out", out_path, "report file (default stdout)");

    auto* c_scan = app.add_subcommand("scan", "sweep a over the Gaussian family");
    c_scan->add_option("--gamma0", gamma0, "Gaussian width parameter");
    c_scan->add_option("--amin", amin, "lower end of the a grid");
    c_scan->add_option("--amax", amax, "upper end of the a grid");
    c_scan->add_option("--points", points, "grid points");
    c_scan->add_option("--im-a", im_a, "imaginary part of a (fixed slice)");
    c_scan->add_option("--out", out_path, "CSV output");

    auto* c_bm = app.add_subcommand("bm-bound", "flux-operator lowest eigenvalue");
    c_bm->add_option("--n", ns, "Nystrom sizes")->delimiter(',');
    c_bm->add_option("--pmax-scale", pmax_scale, "momentum cutoff multiplier");
    c_bm->add_option("--window", window, "time window t1 t2")->expected(2);
    c_bm->add_option("--export-state", export_path, "write the maximizing state JSON");
    c_bm->add_option("--out", out_path, "CSV output");

    auto* c_curves = app.add_subcommand("curves", "J(t) and P(t) tables");
    c_curves->add_option("--catalog", catalog_name, "built-in state name");
    c_curves->add_option("--state", state_path, "state JSON file");
    c_curves->add_option("--tmin", tmin, "start time");
    c_curves->add_option("--tmax", tmax, "end time");
    c_curves->add_option("--points", points, "samples (0 gives header-only tables)");
    c_curves->add_option("--out", prefix, "output prefix (<prefix>_J.csv, _P.csv)");

    auto* c_lim = app.add_subcommand("limit", "sigma -> 0 interpolation trace");
    c_lim->add_option("--gamma0", gamma0, "Gaussian fiducial profile width");
    c_lim->add_option("--state", state_path, "take the fiducial profile from a state file");
    c_lim->add_option("--steps", steps, "number of halving steps");
    c_lim->add_option("--rule", rule, "a-update rule: tracked | fixed")
        ->check(CLI::IsMember({"tracked", "fixed"}));
    c_lim->add_option("--sigma0", sigma0, "initial sigma (0 = automatic)");
    c_lim->add_option("--out", out_path, "CSV output");

    try {
        app.parse(argc, argv);
        if (c_cat->parsed()) cmd_catalog(out_path);
        if (c_cert->parsed()) cmd_certify(catalog_name, state_path, out_path);
        if (c_scan->parsed()) cmd_scan(gamma0, amin, amax, points, im_a, out_path);
        if (c_bm->parsed())
            cmd_bm_bound(ns, pmax_scale, window[0], window[1], export_path, out_path);
        if (c_curves->parsed())
            cmd_curves(catalog_name, state_path, tmin, tmax, points, prefix);
        if (c_lim->parsed()) cmd_limit(gamma0, steps, rule, sigma0, state_path, out_path);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const solver_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
