#include "pbif/stochastic.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace pbif {

namespace {

double param(const ParamMap& p, const std::string& name, double fallback) {
    auto it = p.find(name);
    return it == p.end() ? fallback : it->second;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

SdeSystem duffing_system(double h, double q1, double d11) {
    if (!(q1 > 0) || !(d11 > 0))
        throw std::invalid_argument("duffing_system: q1 and D11 must be positive");
    SdeSystem sys;
    sys.drift = [h](const State& x) {
        return State{x[1], -x[1] - h * x[0] - x[0] * x[0] * x[0]};
    };
    const double gain = q1 * std::sqrt(2.0 * d11);
    sys.diffusion = [gain](const State&) { return State{0.0, gain}; };
    return sys;
}

SdeSystem crater_system(double kappa, double a, double q1) {
    // Gradient flow of U = (q1^2 kappa / 2)(|x|^2 - a)^2 with isotropic noise
    // q1, so the stationary density exp(-2U/q1^2) is exactly the crater.
    SdeSystem sys;
    const double gain = 2.0 * kappa * q1 * q1;
    sys.drift = [gain, a](const State& x) {
        const double s = x[0] * x[0] + x[1] * x[1] - a;
        return State{-gain * s * x[0], -gain * s * x[1]};
    };
    sys.diffusion = [q1](const State&) { return State{q1, q1}; };
    return sys;
}

SdeSystem make_system(const std::string& family, const ParamMap& params) {
    if (family == "duffing")
        return duffing_system(param(params, "h", 0.0), param(params, "q1", 1.0),
                              param(params, "D11", 1.0));
    if (family == "crater")
        return crater_system(param(params, "kappa", 1.0), param(params, "a", 1.0),
                             param(params, "q1", 1.0));
    throw std::invalid_argument("unknown SDE family: " + family);
}

Trajectory euler_maruyama(const SdeSystem& sys, State x0, double dt, std::size_t n_steps,
                          std::uint64_t seed) {
    if (!(dt > 0)) throw std::invalid_argument("euler_maruyama: dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("euler_maruyama: n_steps must be >= 1");

    Trajectory traj;
    traj.dt = dt;
    traj.seed = seed;
    traj.states.reserve(n_steps + 1);
    traj.states.push_back(x0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sqrt_dt = std::sqrt(dt);

    State x = x0;
    for (std::size_t step = 0; step < n_steps; ++step) {
        const State mu = sys.drift(x);
        const State sigma = sys.diffusion(x);
        for (int k = 0; k < 2; ++k) x[k] = x[k] + mu[k] * dt + sigma[k] * sqrt_dt * normal(rng);
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
            throw std::runtime_error("euler_maruyama: trajectory diverged at step " +
                                     std::to_string(step + 1));
        traj.states.push_back(x);
    }
    return traj;
}

PointCloud stationary_sample(const Trajectory& traj, std::size_t burn_in, std::size_t stride) {
    if (stride < 1) throw std::invalid_argument("stationary_sample: stride must be >= 1");
    PointCloud cloud;
    cloud.dim = 2;
    for (std::size_t i = burn_in; i < traj.states.size(); i += stride) {
        cloud.coords.push_back(traj.states[i][0]);
        cloud.coords.push_back(traj.states[i][1]);
    }
    if (cloud.size() == 0) throw std::invalid_argument("stationary_sample: no samples selected");
    return cloud;
}

PointCloud greedy_permutation(const PointCloud& cloud, std::size_t n) {
    if (n < 1) throw std::invalid_argument("greedy_permutation: n must be >= 1");
    const std::size_t total = cloud.size();
    if (total == 0) throw std::invalid_argument("greedy_permutation: empty cloud");
    const std::size_t keep = std::min(n, total);

    std::vector<double> min_dist(total, std::numeric_limits<double>::infinity());
    PointCloud out;
    out.dim = cloud.dim;
    out.coords.reserve(keep * cloud.dim);

    std::uint32_t current = 0;  // seed: first input point
    for (std::size_t picked = 0; picked < keep; ++picked) {
        out.push(cloud.point(current));
        double best = -1.0;
        std::uint32_t next = current;
        for (std::uint32_t i = 0; i < total; ++i) {
            double d = distance(cloud, current, i);
            if (d < min_dist[i]) min_dist[i] = d;
            if (min_dist[i] > best) {
                best = min_dist[i];
                next = i;
            }
        }
        current = next;
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

}  // namespace pbif
