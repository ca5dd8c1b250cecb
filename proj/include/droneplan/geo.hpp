#pragma once

#include <cmath>

namespace droneplan {

inline constexpr double kEarthRadiusM = 6'371'000.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// WGS84 position: latitude/longitude in degrees, altitude in meters.
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
    double alt = 0.0;
};

/// Position in the local tangent frame of an instance origin, meters.
struct LocalPoint {
    double x = 0.0; // east
    double y = 0.0; // north
    double z = 0.0; // altitude
};

bool valid_geo(const GeoPoint& p);

/// Throws ParseError if lat/lon are outside range or alt is not finite.
void check_geo(const GeoPoint& p, const char* what);

/// Equirectangular local tangent projection anchored at `origin`.
LocalPoint project(const GeoPoint& p, const GeoPoint& origin);

/// Inverse of project(). Exact up to floating-point rounding.
GeoPoint unproject(const LocalPoint& l, const GeoPoint& origin);

inline double horizontal_distance(const LocalPoint& a, const LocalPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace droneplan
