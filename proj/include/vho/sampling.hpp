#pragma once

#include "vho/channel.hpp"
#include "vho/rng.hpp"

namespace vho {

/// Inverse of the traversal-angle CDF: pi * (1 - sqrt(1 - u)).
double theta_from_uniform(double u) noexcept;

/// Traversal angle drawn by inverse transform from u ~ U[0, 1).
double theta_sampler(RngStream& rng) noexcept;

/// One straight-line crossing of a sampled cell.
struct Trajectory {
    double r_entry = 0.0;
    double r_exit = 0.0;
    double theta = 0.0;
};

/// Entry/exit radii drawn from the cell model, then the angle. With
/// equal_radii the exit radius repeats the entry draw (circular cell per
/// trial).
Trajectory sample_trajectory(const CellModel& cell, bool equal_radii, RngStream& rng, std::uint64_t& rejections);

} // namespace vho
