#include "viadel/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace viadel {

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const ClosedLoopResult& result, const CostSpec& cost) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path.string());
    out << "t,s,i,b,u,J_cum\n";
    const Trajectory& traj = result.trajectory;
    const double dt = traj.dt();
    double j_cum = 0.0;
    double prev_g = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double g = cost.g(std::max(result.u[k], 0.0));
        if (k > 0) j_cum += 0.5 * dt * (prev_g + g);
        prev_g = g;
        out << format_float(static_cast<double>(k) * dt) << ','
            << format_float(traj.states[k].s) << ',' << format_float(traj.states[k].i)
            << ',' << format_float(result.b[k]) << ',' << format_float(result.u[k])
            << ',' << format_float(j_cum) << '\n';
    }
}

InitialCondition load_initial_condition(const std::filesystem::path& path,
                                        const Params& p) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    nlohmann::json doc;
    in >> doc;

    const std::string type = doc.at("type").get<std::string>();
    if (type == "constant") {
        return ConstantHistory{{doc.at("s").get<double>(), doc.at("i").get<double>()}};
    }
    if (type == "exp_recovery") {
        return RecoveryHistory{doc.at("s0").get<double>(), doc.at("i0").get<double>()};
    }
    if (type == "exp_surge") {
        return SurgeHistory{doc.at("s0").get<double>(), doc.at("i0").get<double>()};
    }
    if (type == "sampled") {
        SampledHistory h;
        for (const auto& row : doc.at("nodes")) {
            if (!row.is_array() || row.size() != 3)
                throw std::invalid_argument("sampled nodes must be [t, s, i] triples");
            h.t.push_back(row[0].get<double>());
            h.x.push_back({row[1].get<double>(), row[2].get<double>()});
        }
        if (h.t.size() < 2)
            throw std::invalid_argument("sampled history needs at least two nodes");
        for (std::size_t k = 1; k < h.t.size(); ++k)
            if (!(h.t[k] > h.t[k - 1]))
                throw std::invalid_argument("sampled node times must increase");
        const double tol = 1e-9 * p.delay;
        if (h.t.front() > -p.delay + tol || h.t.back() < -tol)
            throw std::invalid_argument("sampled history must cover [-delay, 0]");
        return h;
    }
    throw std::invalid_argument("unknown initial condition type: " + type);
}

}  // namespace viadel
