#pragma once

#include <vector>

#include "fracwave/evolve.hpp"

// Superposition solver for the forced problem:
//
//   u(t) = w(t) + integral_0^t v(t; tau) dtau
//
// where w solves the homogeneous problem with (u0, u1) and each v(.; tau)
// solves the homogeneous problem launched at time tau with data
// (0, f(tau, .)). The tau integral uses trapezoid quadrature on nodes
// aligned with solver steps; v(t; t) = 0 exactly, so the right endpoint of
// every composite interval is free.

namespace fracwave::duhamel {

struct DuhamelDecomposition {
    std::vector<evolve::StateSnapshot> homogeneous;  // w
    std::vector<double> tau_nodes;
    std::vector<evolve::StateSnapshot> reconstructed; // w + tau integral
};

// n_tau >= 2 sub-intervals; must divide the solver step count so nodes sit
// on the time grid.
DuhamelDecomposition duhamel_solve(const evolve::ProblemSpec& p,
                                   const evolve::SolverConfig& cfg, int n_tau);

// Max over snapshot times of ||reconstructed - direct||_{L2}, normalized by
// sup_t ||direct||_{L2}.
double duhamel_discrepancy(const evolve::ProblemSpec& p,
                           const evolve::SolverConfig& cfg, int n_tau);

} // namespace fracwave::duhamel
