#include "droneplan/elevation.hpp"

#include "droneplan/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace droneplan {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

double SyntheticTerrain::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ParseError("synthetic terrain '" + id + "' missing parameter '" + key + "'");
    }
    return it->second;
}

double SyntheticTerrain::param_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void SyntheticTerrain::validate() const {
    if (id == "gaussian_ridge") {
        param("amplitude");
        param("center_x");
        if (param("width") <= 0.0) throw ParseError("gaussian_ridge: width must be > 0");
    } else if (id == "valley") {
        param("floor_z");
        param("wall_height");
        if (param("half_width") <= 0.0) throw ParseError("valley: half_width must be > 0");
        if (param_or("ridge_amplitude", 0.0) != 0.0 && param_or("ridge_period", 0.0) <= 0.0) {
            throw ParseError("valley: ridge_period must be > 0 when ridge_amplitude is set");
        }
    } else {
        throw ParseError("unknown synthetic terrain id '" + id + "'");
    }
}

double SyntheticTerrain::eval(double x, double y) const {
    if (id == "gaussian_ridge") {
        const double d = (x - param("center_x")) / param("width");
        return param_or("base", 0.0) + param("amplitude") * std::exp(-d * d);
    }
    if (id == "valley") {
        const double s = y / param("half_width");
        double z = param("wall_height") * (1.0 - std::exp(-s * s));
        const double ra = param_or("ridge_amplitude", 0.0);
        if (ra != 0.0) {
            z *= 1.0 + ra * std::cos(2.0 * kPi * x / param("ridge_period"));
        }
        return param("floor_z") + z;
    }
    throw ParseError("unknown synthetic terrain id '" + id + "'");
}

ElevationModel ElevationModel::flat(double z) {
    ElevationModel m;
    m.model_ = FlatTerrain{z};
    return m;
}

ElevationModel ElevationModel::synthetic(SyntheticTerrain t) {
    t.validate();
    ElevationModel m;
    m.model_ = std::move(t);
    return m;
}

ElevationModel ElevationModel::raster(RasterGrid g) {
    if (g.ncols < 1 || g.nrows < 1) throw ParseError("raster: ncols and nrows must be >= 1");
    if (g.cellsize <= 0.0) throw ParseError("raster: cellsize must be > 0");
    if (g.cells.size() != static_cast<std::size_t>(g.ncols) * static_cast<std::size_t>(g.nrows)) {
        throw ParseError("raster: cell count does not match ncols*nrows");
    }
    ElevationModel m;
    m.model_ = std::move(g);
    return m;
}

ElevationModel ElevationModel::raster_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open raster file: " + path.string());
    return raster(parse_esri_ascii(in, path.string()));
}

TerrainKind ElevationModel::kind() const {
    if (std::holds_alternative<FlatTerrain>(model_)) return TerrainKind::Flat;
    if (std::holds_alternative<RasterGrid>(model_)) return TerrainKind::Raster;
    return TerrainKind::Synthetic;
}

const FlatTerrain& ElevationModel::flat_spec() const { return std::get<FlatTerrain>(model_); }
const RasterGrid& ElevationModel::raster_spec() const { return std::get<RasterGrid>(model_); }
const SyntheticTerrain& ElevationModel::synthetic_spec() const {
    return std::get<SyntheticTerrain>(model_);
}

bool ElevationModel::covers(double x, double y) const {
    if (const auto* g = std::get_if<RasterGrid>(&model_)) {
        const double xmax = g->xllcorner + g->cellsize * g->ncols;
        const double ymax = g->yllcorner + g->cellsize * g->nrows;
        return x >= g->xllcorner && x <= xmax && y >= g->yllcorner && y <= ymax;
    }
    return std::isfinite(x) && std::isfinite(y);
}

double ElevationModel::elevation_at(double x, double y) const {
    if (const auto* f = std::get_if<FlatTerrain>(&model_)) {
        (void)f;
        if (!covers(x, y)) throw OutOfCoverage("elevation query at non-finite point");
        return f->z;
    }
    if (const auto* s = std::get_if<SyntheticTerrain>(&model_)) {
        if (!covers(x, y)) throw OutOfCoverage("elevation query at non-finite point");
        return s->eval(x, y);
    }
    const auto& g = std::get<RasterGrid>(model_);
    if (!covers(x, y)) {
        std::ostringstream os;
        os << "elevation query (" << x << ", " << y << ") outside raster coverage";
        throw OutOfCoverage(os.str());
    }
    // Bilinear interpolation between the four surrounding cell centers,
    // indices clamped at the half-cell rim along the grid border.
    const double gx = (x - g.xllcorner) / g.cellsize - 0.5;
    const double gy = (y - g.yllcorner) / g.cellsize - 0.5; // row counted from south
    const auto clamp_idx = [](double v, int n) {
        double f = std::floor(v);
        if (f < 0.0) f = 0.0;
        if (f > n - 2) f = n - 2;
        return f;
    };
    int c0, r0;
    double fx, fy;
    if (g.ncols == 1) {
        c0 = 0;
        fx = 0.0;
    } else {
        const double f = clamp_idx(gx, g.ncols);
        c0 = static_cast<int>(f);
        fx = std::clamp(gx - f, 0.0, 1.0);
    }
    if (g.nrows == 1) {
        r0 = 0;
        fy = 0.0;
    } else {
        const double f = clamp_idx(gy, g.nrows);
        r0 = static_cast<int>(f);
        fy = std::clamp(gy - f, 0.0, 1.0);
    }
    const int c1 = g.ncols == 1 ? c0 : c0 + 1;
    const int r1 = g.nrows == 1 ? r0 : r0 + 1;
    const double v00 = g.cell(c0, r0);
    const double v10 = g.cell(c1, r0);
    const double v01 = g.cell(c0, r1);
    const double v11 = g.cell(c1, r1);
    if (g.has_nodata) {
        for (double v : {v00, v10, v01, v11}) {
            if (v == g.nodata) {
                std::ostringstream os;
                os << "elevation query (" << x << ", " << y << ") hits NODATA cell";
                throw NoDataCell(os.str());
            }
        }
    }
    const double vy0 = v00 * (1.0 - fx) + v10 * fx;
    const double vy1 = v01 * (1.0 - fx) + v11 * fx;
    return vy0 * (1.0 - fy) + vy1 * fy;
}

RasterGrid parse_esri_ascii(std::istream& in, const std::string& source_name) {
    RasterGrid g;
    bool have_ncols = false, have_nrows = false, have_xll = false, have_yll = false,
         have_cell = false;
    std::string key;
    // Header: key/value pairs until the first purely numeric token.
    while (in >> key) {
        const std::string k = lower(key);
        if (k == "ncols" || k == "nrows" || k == "xllcorner" || k == "yllcorner" ||
            k == "cellsize" || k == "nodata_value") {
            double v;
            if (!(in >> v)) {
                throw ParseError(source_name + ": missing value for header key '" + key + "'");
            }
            if (k == "ncols") {
                g.ncols = static_cast<int>(v);
                have_ncols = true;
            } else if (k == "nrows") {
                g.nrows = static_cast<int>(v);
                have_nrows = true;
            } else if (k == "xllcorner") {
                g.xllcorner = v;
                have_xll = true;
            } else if (k == "yllcorner") {
                g.yllcorner = v;
                have_yll = true;
            } else if (k == "cellsize") {
                g.cellsize = v;
                have_cell = true;
            } else {
                g.nodata = v;
                g.has_nodata = true;
            }
        } else if (k == "xllcenter" || k == "yllcenter") {
            throw ParseError(source_name + ": xllcenter/yllcenter headers are not supported");
        } else {
            break; // first data token
        }
        key.clear();
    }
    if (!have_ncols || !have_nrows || !have_xll || !have_yll || !have_cell) {
        throw ParseError(source_name + ": incomplete ESRI ASCII header");
    }
    if (g.ncols < 1 || g.nrows < 1) throw ParseError(source_name + ": ncols/nrows must be >= 1");
    if (g.cellsize <= 0.0) throw ParseError(source_name + ": cellsize must be > 0");

    const std::size_t expected =
        static_cast<std::size_t>(g.ncols) * static_cast<std::size_t>(g.nrows);
    g.cells.reserve(expected);
    if (!key.empty()) {
        // `key` holds the first data token read by the header loop.
        std::istringstream first(key);
        double v;
        if (!(first >> v)) throw ParseError(source_name + ": unexpected token '" + key + "'");
        g.cells.push_back(v);
    }
    double v;
    while (in >> v) {
        g.cells.push_back(v);
        if (g.cells.size() > expected) break;
    }
    if (g.cells.size() != expected) {
        throw ParseError(source_name + ": expected " + std::to_string(expected) +
                         " cell values, got " + std::to_string(g.cells.size()));
    }
    if (!in.eof()) {
        std::string trailing;
        if (in >> trailing) {
            throw ParseError(source_name + ": trailing data after " + std::to_string(expected) +
                             " cell values");
        }
    }
    return g;
}

ObstacleResult largest_obstacle(const ElevationModel& m, const LocalPoint& a,
                                const LocalPoint& b, double step) {
    if (!(step > 0.0)) throw Error("largest_obstacle: step must be > 0");
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len == 0.0) {
        return ObstacleResult{m.elevation_at(a.x, a.y), 0.0};
    }
    if (len / step > static_cast<double>(1 << 26)) {
        throw Error("largest_obstacle: step too fine for segment length");
    }
    std::size_t n = 1;
    while (len / static_cast<double>(n) > step) n <<= 1;

    ObstacleResult best{-std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n);
        // Two-weight form keeps the sampled points bit-identical when the
        // endpoints are swapped (t and 1-t are both exact for power-of-two n).
        const double w0 = 1.0 - t;
        const double x = a.x * w0 + b.x * t;
        const double y = a.y * w0 + b.y * t;
        const double z = m.elevation_at(x, y);
        if (z > best.z_o) {
            best.z_o = z;
            best.at_fraction = t;
        }
    }
    return best;
}

} // namespace droneplan
