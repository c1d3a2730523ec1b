#include "vho/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vho {

std::vector<std::string> CellModel::validate() const
{
    auto fail = [](const std::string& what) { throw std::invalid_argument("cell: " + what); };
    if (!(mean_radius > 0.0)) fail("mean_radius > 0 required");
    if (!(sigma_radius >= 0.0)) fail("sigma_radius >= 0 required");
    if (!(ref_distance > 0.0)) fail("ref_distance > 0 required");
    if (!(path_loss_exponent > 0.0)) fail("path_loss_exponent > 0 required");
    if (!(shadow_sigma_db >= 0.0)) fail("shadow_sigma_db >= 0 required");
    if (!std::isfinite(tx_power_dbm) || !std::isfinite(ref_path_loss_db)) fail("power terms must be finite");

    std::vector<std::string> warnings;
    if (sigma_radius >= mean_radius / 3.0) {
        std::ostringstream os;
        os << "cell: sigma_radius " << sigma_radius << " >= mean_radius/3 (" << mean_radius / 3.0
           << "); truncation at r > 0 will distort the radius distribution";
        warnings.push_back(os.str());
    }
    return warnings;
}

double sample_radius(const CellModel& cell, RngStream& rng, std::uint64_t& rejections)
{
    if (cell.sigma_radius == 0.0) {
        return cell.mean_radius;
    }
    for (int attempt = 0; attempt < kMaxRadiusRejections; ++attempt) {
        const double r = rng.normal(cell.mean_radius, cell.sigma_radius);
        if (r > 0.0) {
            return r;
        }
        ++rejections;
    }
    throw std::runtime_error("sample_radius: 1000 consecutive non-positive draws; sigma_radius is pathological");
}

double sample_radius(const CellModel& cell, RngStream& rng)
{
    std::uint64_t ignored = 0;
    return sample_radius(cell, rng, ignored);
}

double rss_at_distance(const CellModel& cell, double distance)
{
    if (!(distance >= cell.ref_distance)) {
        std::ostringstream os;
        os << "rss_at_distance: distance " << distance << " m is inside the reference distance "
           << cell.ref_distance << " m";
        throw std::domain_error(os.str());
    }
    return cell.tx_power_dbm - cell.ref_path_loss_db
        - cell.slope_db_per_decade() * std::log10(distance / cell.ref_distance);
}

double rss_at_distance(const CellModel& cell, double distance, RngStream& rng)
{
    const double mean = rss_at_distance(cell, distance);
    if (cell.shadow_sigma_db == 0.0) {
        return mean;
    }
    return mean + rng.normal(0.0, cell.shadow_sigma_db);
}

} // namespace vho
