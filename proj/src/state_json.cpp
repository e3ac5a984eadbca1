#include <json.hpp>

#include "backflow/state.hpp"

namespace backflow {

using nlohmann::json;

std::string state_to_json(const MomentumState& s) {
    json j;
    json prof;
    std::visit(
        [&prof](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianF>) {
                prof["kind"] = "gaussian";
                prof["params"] = {{"gamma0", p.gamma0}};
            } else if constexpr (std::is_same_v<T, BrackenMelloyState>) {
                prof["kind"] = "bracken_melloy";
                prof["params"] = {{"K", p.K}};
            } else if constexpr (std::is_same_v<T, EvesonTruncated>) {
                prof["kind"] = "eveson";
                prof["params"] = {{"p0", p.p0}};
            } else {
                prof["kind"] = "grid";
                json params;
                params["nodes"] = p.grid.nodes;
                params["weights"] = p.grid.weights;
                std::vector<double> re, im;
                re.reserve(p.values.size());
                im.reserve(p.values.size());
                for (const auto& v : p.values) {
                    re.push_back(v.real());
                    im.push_back(v.imag());
                }
                params["re"] = re;
                params["im"] = im;
                prof["params"] = params;
            }
        },
        s.profile);
    j["profile"] = prof;
    j["a"] = {s.a.real(), s.a.imag()};
    j["family_factor"] = s.family_factor;
    j["units"] = {{"hbar", s.units.hbar}, {"mass", s.units.mass}};
    return j.dump(2);
}

MomentumState state_from_json(const std::string& text) {
    const json j = json::parse(text);
    MomentumState s;
    const json& prof = j.at("profile");
    const std::string kind = prof.at("kind").get<std::string>();
    const json& params = prof.at("params");
    if (kind == "gaussian") {
        s.profile = GaussianF{params.at("gamma0").get<double>()};
    } else if (kind == "bracken_melloy") {
        s.profile = BrackenMelloyState{params.at("K").get<double>()};
    } else if (kind == "eveson") {
        s.profile = EvesonTruncated{params.at("p0").get<double>()};
    } else if (kind == "grid") {
        GridSampled g;
        g.grid.nodes = params.at("nodes").get<std::vector<double>>();
        g.grid.weights = params.at("weights").get<std::vector<double>>();
        g.grid.map_scale = g.grid.nodes.empty() ? 1.0 : g.grid.nodes.back();
        g.grid.scheme = GridScheme::TruncatedUniform;
        const auto re = params.at("re").get<std::vector<double>>();
        const auto im = params.at("im").get<std::vector<double>>();
        if (re.size() != im.size() || re.size() != g.grid.nodes.size() ||
            g.grid.weights.size() != g.grid.nodes.size())
            throw std::invalid_argument("state_from_json: grid arrays disagree in length");
        g.values.resize(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) g.values[i] = {re[i], im[i]};
        s.profile = std::move(g);
    } else {
        throw std::invalid_argument("state_from_json: unknown profile kind '" + kind + "'");
    }
    const auto& av = j.at("a");
    s.a = {av.at(0).get<double>(), av.at(1).get<double>()};
    s.family_factor = j.at("family_factor").get<bool>();
    s.units.hbar = j.at("units").at("hbar").get<double>();
    s.units.mass = j.at("units").at("mass").get<double>();
    s.units.validate();
    return s;
}

}  // namespace backflow
