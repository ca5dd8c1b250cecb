#include "droneplan/geo.hpp"

#include "droneplan/errors.hpp"

#include <string>

namespace droneplan {

bool valid_geo(const GeoPoint& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && std::isfinite(p.alt) &&
           p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

void check_geo(const GeoPoint& p, const char* what) {
    if (!valid_geo(p)) {
        throw ParseError(std::string(what) + ": invalid coordinates (lat=" +
                         std::to_string(p.lat) + ", lon=" + std::to_string(p.lon) +
                         ", alt=" + std::to_string(p.alt) + ")");
    }
}

LocalPoint project(const GeoPoint& p, const GeoPoint& origin) {
    const double cos_lat = std::cos(deg2rad(origin.lat));
    return LocalPoint{
        kEarthRadiusM * deg2rad(p.lon - origin.lon) * cos_lat,
        kEarthRadiusM * deg2rad(p.lat - origin.lat),
        p.alt,
    };
}

GeoPoint unproject(const LocalPoint& l, const GeoPoint& origin) {
    const double cos_lat = std::cos(deg2rad(origin.lat));
    return GeoPoint{
        origin.lat + rad2deg(l.y / kEarthRadiusM),
        origin.lon + rad2deg(l.x / (kEarthRadiusM * cos_lat)),
        l.z,
    };
}

} // namespace droneplan
