#pragma once

#include "droneplan/elevation.hpp"
#include "droneplan/geo.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace droneplan {

inline constexpr double kObstacleSafetyMarginM = 5.0;

struct DroneProfile {
    std::string name;
    double v_vert_up = 0.0;   // m/s, ascent
    double v_vert_down = 0.0; // m/s, descent
    double v_hor = 0.0;       // m/s, cruise
    double c_start = 0.0;     // s, alarm-to-takeoff
    double max_wind = 0.0;    // m/s, informational

    void validate() const;
};

/// Built-in profiles: "lifedrone" and "wingcopter178".
std::optional<DroneProfile> builtin_profile(std::string_view name);

/// Climb-cruise-descend travel time in seconds. z_o is the largest-obstacle
/// elevation along the segment; the cruise altitude is
/// max(z_b, z_o + 5 m, z_p).
double travel_time(const DroneProfile& profile, const LocalPoint& b, const LocalPoint& p,
                   double z_o);

class TravelTimeMatrix {
public:
    TravelTimeMatrix() = default;
    TravelTimeMatrix(int stations, int patients, std::vector<double> entries);

    int stations() const { return m_; }
    int patients() const { return q_; }

    double at(int station, int patient) const {
        return t_[static_cast<std::size_t>(station) * q_ + patient];
    }
    /// Cheapest station time for one patient (cached).
    double col_min(int patient) const { return col_min_[static_cast<std::size_t>(patient)]; }

    const std::vector<double>& entries() const { return t_; }

private:
    int m_ = 0;
    int q_ = 0;
    std::vector<double> t_; // station-major
    std::vector<double> col_min_;
};

TravelTimeMatrix build_matrix(const DroneProfile& profile,
                              const std::vector<LocalPoint>& stations,
                              const std::vector<LocalPoint>& patients,
                              const ElevationModel& terrain, double obstacle_step);

/// Smallest feasible time cap: max over patients of the per-patient
/// cheapest-station time. Throws EmptyInstance on an empty matrix.
double feasibility_threshold(const TravelTimeMatrix& matrix);

} // namespace droneplan
