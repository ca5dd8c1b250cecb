#include "droneplan/instance.hpp"

#include "droneplan/errors.hpp"
#include "droneplan/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace droneplan {

using ordered_json = nlohmann::ordered_json;

std::vector<LocalPoint> Instance::station_points() const {
    std::vector<LocalPoint> pts;
    pts.reserve(stations.size());
    for (const auto& s : stations) pts.push_back(project(s.loc, origin));
    return pts;
}

std::vector<LocalPoint> Instance::patient_points() const {
    std::vector<LocalPoint> pts;
    pts.reserve(patients.size());
    for (const auto& p : patients) pts.push_back(project(p.loc, origin));
    return pts;
}

namespace {

struct ProjectedTrails {
    // Flat list of segments with cumulative projected length.
    std::vector<LocalPoint> seg_a;
    std::vector<LocalPoint> seg_b;
    std::vector<double> cum; // cum[k] = total length of segments [0, k]
    double total = 0.0;
};

ProjectedTrails project_trails(const TrailNetwork& net, const GeoPoint& origin) {
    if (net.empty()) throw EmptyNetwork("trail network is empty");
    ProjectedTrails pt;
    for (const auto& line : net.polylines) {
        if (line.size() < 2) throw DegenerateNetwork("trail polyline with fewer than 2 vertices");
        for (std::size_t v = 0; v + 1 < line.size(); ++v) {
            const LocalPoint a = project(line[v], origin);
            const LocalPoint b = project(line[v + 1], origin);
            const double len = horizontal_distance(a, b);
            if (len == 0.0) continue;
            pt.seg_a.push_back(a);
            pt.seg_b.push_back(b);
            pt.total += len;
            pt.cum.push_back(pt.total);
        }
    }
    if (pt.total <= 0.0) throw DegenerateNetwork("trail network has zero projected length");
    return pt;
}

LocalPoint locate(const ProjectedTrails& pt, double arc) {
    const auto it = std::lower_bound(pt.cum.begin(), pt.cum.end(), arc);
    const std::size_t k = std::min(static_cast<std::size_t>(it - pt.cum.begin()),
                                   pt.cum.size() - 1);
    const double seg_end = pt.cum[k];
    const double seg_len = k == 0 ? pt.cum[0] : pt.cum[k] - pt.cum[k - 1];
    const double within = seg_len - (seg_end - arc);
    const double t = std::clamp(within / seg_len, 0.0, 1.0);
    const LocalPoint& a = pt.seg_a[k];
    const LocalPoint& b = pt.seg_b[k];
    return LocalPoint{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, 0.0};
}

std::string indexed_id(const char* prefix, int index, int count) {
    int width = 1;
    for (int v = count; v >= 10; v /= 10) ++width;
    width = std::max(width, 4);
    std::ostringstream os;
    os << prefix;
    std::string digits = std::to_string(index + 1);
    os << std::string(static_cast<std::size_t>(width) - digits.size(), '0') << digits;
    return os.str();
}

} // namespace

LocalPoint trail_point_at(const TrailNetwork& net, const GeoPoint& origin, double fraction) {
    const ProjectedTrails pt = project_trails(net, origin);
    return locate(pt, std::clamp(fraction, 0.0, 1.0) * pt.total);
}

std::vector<Patient> sample_patients(const TrailNetwork& net, int count, std::uint64_t seed,
                                     const ElevationModel& terrain, const GeoPoint& origin) {
    if (count < 1) throw Error("sample_patients: count must be >= 1");
    const ProjectedTrails pt = project_trails(net, origin);
    Rng rng(seed);
    std::vector<Patient> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double arc = rng.next_unit() * pt.total;
        LocalPoint lp = locate(pt, arc);
        lp.z = terrain.elevation_at(lp.x, lp.y);
        Patient p;
        p.id = indexed_id("p", k, count);
        p.loc = unproject(lp, origin);
        p.source = PatientSource::Sampled;
        out.push_back(std::move(p));
    }
    return out;
}

std::string station_kind_name(StationKind k) {
    switch (k) {
    case StationKind::ShelterHut: return "shelter_hut";
    case StationKind::FireStation: return "fire_station";
    case StationKind::Custom: return "custom";
    }
    return "custom";
}

std::string patient_source_name(PatientSource s) {
    switch (s) {
    case PatientSource::Sampled: return "sampled";
    case PatientSource::Fixture: return "fixture";
    case PatientSource::HelicopterRecord: return "helicopter_record";
    }
    return "fixture";
}

namespace {

StationKind parse_station_kind(const std::string& s) {
    if (s == "shelter_hut") return StationKind::ShelterHut;
    if (s == "fire_station") return StationKind::FireStation;
    if (s == "custom") return StationKind::Custom;
    throw ParseError("unknown station kind '" + s + "'");
}

PatientSource parse_patient_source(const std::string& s) {
    if (s == "sampled") return PatientSource::Sampled;
    if (s == "fixture") return PatientSource::Fixture;
    if (s == "helicopter_record") return PatientSource::HelicopterRecord;
    throw ParseError("unknown patient source '" + s + "'");
}

void reject_unknown_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (item.key() == a) {
                known = true;
                break;
            }
        }
        if (!known) throw ParseError(where + ": unknown key '" + item.key() + "'");
    }
}

double get_number(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(where + ": key '" + key + "' must be a number");
    return v.get<double>();
}

std::string get_string(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ParseError(where + ": key '" + key + "' must be a string");
    return v.get<std::string>();
}

GeoPoint parse_geo(const ordered_json& obj, const std::string& where, bool with_alt) {
    if (with_alt) {
        reject_unknown_keys(obj, {"lat", "lon", "alt"}, where);
    } else {
        reject_unknown_keys(obj, {"lat", "lon"}, where);
    }
    GeoPoint p;
    p.lat = get_number(obj, "lat", where);
    p.lon = get_number(obj, "lon", where);
    p.alt = with_alt ? get_number(obj, "alt", where) : 0.0;
    check_geo(p, where.c_str());
    return p;
}

DroneProfile parse_profile(const ordered_json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        auto p = builtin_profile(name);
        if (!p) throw ParseError(where + ": unknown drone profile '" + name + "'");
        return *p;
    }
    if (!j.is_object()) throw ParseError(where + ": profile must be a name or an object");
    reject_unknown_keys(j, {"name", "v_vert_up", "v_vert_down", "v_hor", "c_start", "max_wind"},
                        where);
    DroneProfile p;
    p.name = get_string(j, "name", where);
    p.v_vert_up = get_number(j, "v_vert_up", where);
    p.v_vert_down = get_number(j, "v_vert_down", where);
    p.v_hor = get_number(j, "v_hor", where);
    p.c_start = get_number(j, "c_start", where);
    p.max_wind = j.contains("max_wind") ? get_number(j, "max_wind", where) : 0.0;
    p.validate();
    return p;
}

ElevationModel parse_terrain(const ordered_json& j, const std::filesystem::path& base_dir,
                             std::string* raster_path_out) {
    const std::string where = "terrain";
    if (!j.is_object()) throw ParseError(where + ": must be an object");
    const std::string type = get_string(j, "type", where);
    if (type == "flat") {
        reject_unknown_keys(j, {"type", "z"}, where);
        return ElevationModel::flat(get_number(j, "z", where));
    }
    if (type == "synthetic") {
        reject_unknown_keys(j, {"type", "id", "params"}, where);
        SyntheticTerrain t;
        t.id = get_string(j, "id", where);
        if (!j.contains("params") || !j.at("params").is_object()) {
            throw ParseError(where + ": synthetic terrain requires a 'params' object");
        }
        for (const auto& item : j.at("params").items()) {
            if (!item.value().is_number()) {
                throw ParseError(where + ": parameter '" + item.key() + "' must be a number");
            }
            t.params[item.key()] = item.value().get<double>();
        }
        return ElevationModel::synthetic(std::move(t));
    }
    if (type == "raster") {
        reject_unknown_keys(j, {"type", "path"}, where);
        const std::string rel = get_string(j, "path", where);
        *raster_path_out = rel;
        return ElevationModel::raster_from_file(base_dir / rel);
    }
    throw ParseError(where + ": unknown terrain type '" + type + "'");
}

void validate_instance(const Instance& inst) {
    if (inst.stations.empty()) throw ParseError("instance: needs at least one station");
    if (inst.patients.empty() && inst.trails.empty()) {
        throw ParseError("instance: needs patients or trails to sample them from");
    }
    if (!(inst.obstacle_step > 0.0)) throw ParseError("instance: obstacle_step must be > 0");
    check_geo(inst.origin, "origin");
    std::set<std::string> ids;
    for (const auto& s : inst.stations) {
        if (!ids.insert(s.id).second) throw ParseError("duplicate station id '" + s.id + "'");
        const LocalPoint lp = project(s.loc, inst.origin);
        if (!inst.terrain.covers(lp.x, lp.y)) {
            throw ParseError("station '" + s.id + "' lies outside terrain coverage");
        }
    }
    ids.clear();
    for (const auto& p : inst.patients) {
        if (!ids.insert(p.id).second) throw ParseError("duplicate patient id '" + p.id + "'");
        const LocalPoint lp = project(p.loc, inst.origin);
        if (!inst.terrain.covers(lp.x, lp.y)) {
            throw ParseError("patient '" + p.id + "' lies outside terrain coverage");
        }
    }
    for (const auto& line : inst.trails.polylines) {
        for (const auto& v : line) {
            const LocalPoint lp = project(v, inst.origin);
            if (!inst.terrain.covers(lp.x, lp.y)) {
                throw ParseError("trail vertex lies outside terrain coverage");
            }
        }
    }
}

} // namespace

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path.string());
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(path.string() + ": instance must be a JSON object");
    reject_unknown_keys(
        j, {"origin", "terrain", "profile", "obstacle_step", "stations", "patients", "trails"},
        "instance");

    Instance inst;
    if (!j.contains("origin")) throw ParseError("instance: missing 'origin'");
    inst.origin = parse_geo(j.at("origin"), "origin", true);
    if (!j.contains("terrain")) throw ParseError("instance: missing 'terrain'");
    inst.terrain = parse_terrain(j.at("terrain"), path.parent_path(), &inst.raster_path);
    if (!j.contains("profile")) throw ParseError("instance: missing 'profile'");
    inst.profile = parse_profile(j.at("profile"), "profile");
    inst.obstacle_step = j.contains("obstacle_step")
                             ? get_number(j, "obstacle_step", "instance")
                             : 10.0;

    if (!j.contains("stations") || !j.at("stations").is_array()) {
        throw ParseError("instance: missing 'stations' array");
    }
    for (const auto& sj : j.at("stations")) {
        const std::string where = "station #" + std::to_string(inst.stations.size());
        reject_unknown_keys(sj, {"id", "kind", "lat", "lon", "alt"}, where);
        Station s;
        s.id = get_string(sj, "id", where);
        s.kind = parse_station_kind(get_string(sj, "kind", where));
        s.loc = GeoPoint{get_number(sj, "lat", where), get_number(sj, "lon", where),
                         get_number(sj, "alt", where)};
        check_geo(s.loc, s.id.c_str());
        inst.stations.push_back(std::move(s));
    }
    if (j.contains("patients")) {
        if (!j.at("patients").is_array()) throw ParseError("instance: 'patients' must be an array");
        for (const auto& pj : j.at("patients")) {
            const std::string where = "patient #" + std::to_string(inst.patients.size());
            reject_unknown_keys(pj, {"id", "lat", "lon", "alt", "source"}, where);
            Patient p;
            p.id = get_string(pj, "id", where);
            p.loc = GeoPoint{get_number(pj, "lat", where), get_number(pj, "lon", where),
                             get_number(pj, "alt", where)};
            check_geo(p.loc, p.id.c_str());
            p.source = pj.contains("source")
                           ? parse_patient_source(get_string(pj, "source", where))
                           : PatientSource::Fixture;
            inst.patients.push_back(std::move(p));
        }
    }
    if (j.contains("trails")) {
        if (!j.at("trails").is_array()) throw ParseError("instance: 'trails' must be an array");
        for (const auto& lj : j.at("trails")) {
            if (!lj.is_array() || lj.size() < 2) {
                throw ParseError("instance: each trail must be an array of >= 2 vertices");
            }
            std::vector<GeoPoint> line;
            for (const auto& vj : lj) {
                line.push_back(parse_geo(vj, "trail vertex", false));
            }
            inst.trails.polylines.push_back(std::move(line));
        }
    }
    validate_instance(inst);
    return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    ordered_json j;
    j["origin"] = {{"lat", inst.origin.lat}, {"lon", inst.origin.lon}, {"alt", inst.origin.alt}};
    switch (inst.terrain.kind()) {
    case TerrainKind::Flat:
        j["terrain"] = {{"type", "flat"}, {"z", inst.terrain.flat_spec().z}};
        break;
    case TerrainKind::Synthetic: {
        const auto& t = inst.terrain.synthetic_spec();
        ordered_json params;
        for (const auto& [k, v] : t.params) params[k] = v;
        j["terrain"] = {{"type", "synthetic"}, {"id", t.id}, {"params", params}};
        break;
    }
    case TerrainKind::Raster:
        if (inst.raster_path.empty()) {
            throw Error("save_instance: raster terrain without a source path");
        }
        j["terrain"] = {{"type", "raster"}, {"path", inst.raster_path}};
        break;
    }
    if (builtin_profile(inst.profile.name) &&
        builtin_profile(inst.profile.name)->v_hor == inst.profile.v_hor &&
        builtin_profile(inst.profile.name)->v_vert_up == inst.profile.v_vert_up &&
        builtin_profile(inst.profile.name)->v_vert_down == inst.profile.v_vert_down &&
        builtin_profile(inst.profile.name)->c_start == inst.profile.c_start) {
        j["profile"] = inst.profile.name;
    } else {
        j["profile"] = {{"name", inst.profile.name},
                        {"v_vert_up", inst.profile.v_vert_up},
                        {"v_vert_down", inst.profile.v_vert_down},
                        {"v_hor", inst.profile.v_hor},
                        {"c_start", inst.profile.c_start},
                        {"max_wind", inst.profile.max_wind}};
    }
    j["obstacle_step"] = inst.obstacle_step;
    ordered_json stations = ordered_json::array();
    for (const auto& s : inst.stations) {
        stations.push_back({{"id", s.id},
                            {"kind", station_kind_name(s.kind)},
                            {"lat", s.loc.lat},
                            {"lon", s.loc.lon},
                            {"alt", s.loc.alt}});
    }
    j["stations"] = std::move(stations);
    if (!inst.patients.empty()) {
        ordered_json patients = ordered_json::array();
        for (const auto& p : inst.patients) {
            patients.push_back({{"id", p.id},
                                {"lat", p.loc.lat},
                                {"lon", p.loc.lon},
                                {"alt", p.loc.alt},
                                {"source", patient_source_name(p.source)}});
        }
        j["patients"] = std::move(patients);
    }
    if (!inst.trails.empty()) {
        ordered_json trails = ordered_json::array();
        for (const auto& line : inst.trails.polylines) {
            ordered_json lj = ordered_json::array();
            for (const auto& v : line) {
                lj.push_back({{"lat", v.lat}, {"lon", v.lon}});
            }
            trails.push_back(std::move(lj));
        }
        j["trails"] = std::move(trails);
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write instance file: " + path.string());
    out << j.dump(2) << '\n';
}

TravelTimeMatrix build_instance_matrix(const Instance& inst) {
    if (inst.patients.empty()) throw EmptyInstance("instance has no patients");
    return build_matrix(inst.profile, inst.station_points(), inst.patient_points(), inst.terrain,
                        inst.obstacle_step);
}

Instance generate_instance(const GeneratorConfig& cfg) {
    if (cfg.m < 1 || cfg.q < 1) throw Error("generator: m and q must be >= 1");
    Instance inst;
    inst.origin = cfg.origin;
    inst.obstacle_step = cfg.obstacle_step;
    auto profile = builtin_profile(cfg.profile);
    if (!profile) throw ParseError("generator: unknown drone profile '" + cfg.profile + "'");
    inst.profile = *profile;

    SyntheticTerrain terrain;
    terrain.id = "valley";
    terrain.params = {{"floor_z", 850.0},
                      {"wall_height", 2300.0},
                      {"half_width", 7000.0},
                      {"ridge_amplitude", 0.25},
                      {"ridge_period", 9000.0}};
    inst.terrain = ElevationModel::synthetic(terrain);

    Rng rng(cfg.seed);
    const double hx = cfg.extent_x / 2.0;
    const double hy = cfg.extent_y / 2.0;

    // Fire stations sit near the valley floor, shelter huts up the slopes.
    for (int k = 0; k < cfg.m; ++k) {
        const bool fire = (k % 3) == 0;
        const double x = rng.uniform(-hx, hx);
        double y;
        if (fire) {
            y = rng.uniform(-1'200.0, 1'200.0);
        } else {
            const double off = rng.uniform(1'500.0, hy);
            y = rng.coin() ? off : -off;
        }
        LocalPoint lp{x, y, 0.0};
        lp.z = inst.terrain.elevation_at(lp.x, lp.y);
        Station s;
        s.id = indexed_id("s", k, cfg.m);
        s.kind = fire ? StationKind::FireStation : StationKind::ShelterHut;
        s.loc = unproject(lp, inst.origin);
        inst.stations.push_back(std::move(s));
    }

    // Main trail along the valley floor.
    {
        std::vector<GeoPoint> line;
        for (double x = -hx; x <= hx + 1.0; x += 400.0) {
            const double y = 900.0 * std::sin(2.0 * kPi * x / 15'000.0);
            line.push_back(unproject(LocalPoint{x, y, 0.0}, inst.origin));
        }
        inst.trails.polylines.push_back(std::move(line));
    }
    // Side trails climbing the walls, alternating sides.
    const int side_trails = 10;
    for (int k = 0; k < side_trails; ++k) {
        const double xc = -hx + (k + 0.5) * cfg.extent_x / side_trails;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        std::vector<GeoPoint> line;
        const int verts = 16;
        for (int v = 0; v < verts; ++v) {
            const double t = static_cast<double>(v) / (verts - 1);
            const double y = sign * t * 0.8 * hy;
            const double x = xc + 800.0 * std::sin(2.0 * kPi * t);
            line.push_back(unproject(LocalPoint{x, y, 0.0}, inst.origin));
        }
        inst.trails.polylines.push_back(std::move(line));
    }

    const std::uint64_t patient_seed = rng.next_u64();
    inst.patients = sample_patients(inst.trails, cfg.q, patient_seed, inst.terrain, inst.origin);
    return inst;
}

} // namespace droneplan
