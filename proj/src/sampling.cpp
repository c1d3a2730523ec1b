#include "vho/sampling.hpp"

#include "vho/hne.hpp"

#include <cmath>

namespace vho {

double theta_from_uniform(double u) noexcept
{
    return kPi * (1.0 - std::sqrt(1.0 - u));
}

double theta_sampler(RngStream& rng) noexcept
{
    return theta_from_uniform(rng.uniform());
}

Trajectory sample_trajectory(const CellModel& cell, bool equal_radii, RngStream& rng, std::uint64_t& rejections)
{
    Trajectory t;
    t.r_entry = sample_radius(cell, rng, rejections);
    t.r_exit = equal_radii ? t.r_entry : sample_radius(cell, rng, rejections);
    t.theta = theta_sampler(rng);
    return t;
}

} // namespace vho
