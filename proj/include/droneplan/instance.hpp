#pragma once

#include "droneplan/elevation.hpp"
#include "droneplan/geo.hpp"
#include "droneplan/travel.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace droneplan {

enum class StationKind { ShelterHut, FireStation, Custom };

struct Station {
    std::string id;
    StationKind kind = StationKind::Custom;
    GeoPoint loc;
};

enum class PatientSource { Sampled, Fixture, HelicopterRecord };

struct Patient {
    std::string id;
    GeoPoint loc;
    PatientSource source = PatientSource::Fixture;
};

/// Hiking-trail polylines; sampling treats them as one arc-length measure.
struct TrailNetwork {
    std::vector<std::vector<GeoPoint>> polylines;

    bool empty() const { return polylines.empty(); }
};

struct Instance {
    GeoPoint origin;
    std::vector<Station> stations;
    std::vector<Patient> patients;
    ElevationModel terrain = ElevationModel::flat(0.0);
    DroneProfile profile;
    double obstacle_step = 10.0;
    TrailNetwork trails;
    std::string raster_path; // as written in the file, for round-trip saves

    std::vector<LocalPoint> station_points() const;
    std::vector<LocalPoint> patient_points() const;
};

/// Uniform-by-arc-length patient sampling over the trail network. Arc
/// lengths are measured in the projected frame of `origin`; sampled
/// altitudes come from the terrain model. Deterministic per seed.
std::vector<Patient> sample_patients(const TrailNetwork& net, int count, std::uint64_t seed,
                                     const ElevationModel& terrain, const GeoPoint& origin);

/// Point at a given arc-length fraction of the projected network
/// (exposed for tests; sample_patients draws fractions and calls this).
LocalPoint trail_point_at(const TrailNetwork& net, const GeoPoint& origin, double fraction);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

/// Projects instance geometry and evaluates the full travel-time matrix.
TravelTimeMatrix build_instance_matrix(const Instance& inst);

struct GeneratorConfig {
    int m = 104;
    int q = 1500;
    std::uint64_t seed = 1;
    std::string profile = "lifedrone";
    double obstacle_step = 10.0;
    double extent_x = 36'000.0; // valley length, m
    double extent_y = 24'000.0; // valley width, m
    GeoPoint origin{46.62, 10.55, 0.0};
};

/// Synthetic alpine-valley instance: analytic terrain, stations on the
/// valley walls and floor, trails along the floor and up the slopes,
/// patients sampled on the trails. Deterministic per seed.
Instance generate_instance(const GeneratorConfig& cfg);

std::string station_kind_name(StationKind k);
std::string patient_source_name(PatientSource s);

} // namespace droneplan
