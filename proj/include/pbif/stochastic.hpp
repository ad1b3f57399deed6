#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "pbif/densities.hpp"
#include "pbif/simplicial.hpp"

namespace pbif {

using State = std::array<double, 2>;

/// Two-dimensional SDE dX = mu(X) dt + sigma(X) dW, one Wiener channel per
/// component.
struct SdeSystem {
    std::function<State(const State&)> drift;
    std::function<State(const State&)> diffusion;
};

/// First-order form of x'' + x' + h x + x^3 = q1 dW1: noise enters the
/// velocity component only. dW1 carries intensity D11 in the spectral
/// convention E[dW1^2] = 2 D11 dt, so against the standard Brownian
/// increments of the integrator the diffusion gain is q1 sqrt(2 D11); that
/// is what makes the stationary density exp[-(x2^2 + h x1^2 + x1^4/2) /
/// (2 q1^2 D11)].
SdeSystem duffing_system(double h, double q1, double d11 = 1.0);

/// Langevin system whose stationary density is crater_pdf(kappa, a):
/// gradient drift -2 kappa q1^2 (|x|^2 - a) x with isotropic noise q1
/// (standard Brownian convention).
SdeSystem crater_system(double kappa, double a, double q1);

/// System for a registered density family ("duffing", "crater").
SdeSystem make_system(const std::string& family, const ParamMap& params);

struct Trajectory {
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<State> states;  // includes the initial state
};

/// Euler-Maruyama integration, deterministic per seed. Throws on a
/// non-finite state, reporting the step index.
Trajectory euler_maruyama(const SdeSystem& sys, State x0, double dt, std::size_t n_steps,
                          std::uint64_t seed);

/// States at indices burn_in, burn_in + stride, ... Throws if empty.
PointCloud stationary_sample(const Trajectory& traj, std::size_t burn_in, std::size_t stride);

/// Farthest-point subsampling: starts at the first input point, then
/// repeatedly appends the point maximizing the min distance to the chosen
/// set; stops at min(n, |cloud|).
PointCloud greedy_permutation(const PointCloud& cloud, std::size_t n);

/// Per-parameter seed stream derived from a master seed (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace pbif
