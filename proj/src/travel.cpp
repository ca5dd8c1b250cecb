#include "droneplan/travel.hpp"

#include "droneplan/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace droneplan {

void DroneProfile::validate() const {
    if (!(v_vert_up > 0.0) || !(v_vert_down > 0.0) || !(v_hor > 0.0)) {
        throw ParseError("drone profile '" + name + "': all speeds must be > 0");
    }
    if (!(c_start >= 0.0)) {
        throw ParseError("drone profile '" + name + "': c_start must be >= 0");
    }
}

std::optional<DroneProfile> builtin_profile(std::string_view name) {
    if (name == "lifedrone") {
        return DroneProfile{"lifedrone", 2.5, 2.5, 17.9, 30.0, 12.0};
    }
    if (name == "wingcopter178") {
        return DroneProfile{"wingcopter178", 6.0, 6.0, 36.1, 20.0, 15.0};
    }
    return std::nullopt;
}

double travel_time(const DroneProfile& profile, const LocalPoint& b, const LocalPoint& p,
                   double z_o) {
    const double z_max = std::max({b.z, z_o + kObstacleSafetyMarginM, p.z});
    return profile.c_start + (z_max - b.z) / profile.v_vert_up +
           horizontal_distance(b, p) / profile.v_hor + (z_max - p.z) / profile.v_vert_down;
}

TravelTimeMatrix::TravelTimeMatrix(int stations, int patients, std::vector<double> entries)
    : m_(stations), q_(patients), t_(std::move(entries)) {
    if (t_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(q_)) {
        throw Error("travel time matrix: entry count does not match dimensions");
    }
    col_min_.assign(static_cast<std::size_t>(q_), std::numeric_limits<double>::infinity());
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < q_; ++j) {
            col_min_[j] = std::min(col_min_[j], at(i, j));
        }
    }
}

TravelTimeMatrix build_matrix(const DroneProfile& profile,
                              const std::vector<LocalPoint>& stations,
                              const std::vector<LocalPoint>& patients,
                              const ElevationModel& terrain, double obstacle_step) {
    const int m = static_cast<int>(stations.size());
    const int q = static_cast<int>(patients.size());
    std::vector<double> entries(static_cast<std::size_t>(m) * static_cast<std::size_t>(q));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < q; ++j) {
            try {
                const ObstacleResult o =
                    largest_obstacle(terrain, stations[i], patients[j], obstacle_step);
                entries[static_cast<std::size_t>(i) * q + j] =
                    travel_time(profile, stations[i], patients[j], o.z_o);
            } catch (const Error& e) {
                std::ostringstream os;
                os << "travel time for station " << i << ", patient " << j << ": " << e.what();
                throw Error(os.str());
            }
        }
    }
    return TravelTimeMatrix(m, q, std::move(entries));
}

double feasibility_threshold(const TravelTimeMatrix& matrix) {
    if (matrix.stations() == 0 || matrix.patients() == 0) {
        throw EmptyInstance("feasibility threshold of an empty travel time matrix");
    }
    double tbar = 0.0;
    for (int j = 0; j < matrix.patients(); ++j) {
        tbar = std::max(tbar, matrix.col_min(j));
    }
    return tbar;
}

} // namespace droneplan
