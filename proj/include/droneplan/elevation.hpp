#pragma once

#include "droneplan/geo.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace droneplan {

/// ESRI ASCII grid in local-frame meters. Row 0 of `cells` is the
/// northernmost row, exactly as stored in the file.
struct RasterGrid {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 0.0;
    double nodata = -9999.0;
    bool has_nodata = false;
    std::vector<double> cells;

    double cell(int col, int row_from_south) const {
        return cells[static_cast<std::size_t>(nrows - 1 - row_from_south) *
                         static_cast<std::size_t>(ncols) +
                     static_cast<std::size_t>(col)];
    }
};

/// Analytic terrain function, selected by id:
///   "gaussian_ridge": base + amplitude * exp(-((x-center_x)/width)^2)
///   "valley":         floor_z + wall_height * (1 - exp(-(y/half_width)^2))
///                       * (1 + ridge_amplitude * cos(2*pi*x/ridge_period))
struct SyntheticTerrain {
    std::string id;
    std::map<std::string, double> params;

    double eval(double x, double y) const;
    double param(const std::string& key) const;
    double param_or(const std::string& key, double fallback) const;
    void validate() const;
};

struct FlatTerrain {
    double z = 0.0;
};

enum class TerrainKind { Flat, Raster, Synthetic };

class ElevationModel {
public:
    static ElevationModel flat(double z);
    static ElevationModel synthetic(SyntheticTerrain t);
    static ElevationModel raster(RasterGrid g);
    static ElevationModel raster_from_file(const std::filesystem::path& path);

    TerrainKind kind() const;
    bool covers(double x, double y) const;

    /// Terrain elevation at local (x, y). Raster models interpolate
    /// bilinearly between the four surrounding cell centers. Throws
    /// OutOfCoverage / NoDataCell.
    double elevation_at(double x, double y) const;

    const FlatTerrain& flat_spec() const;
    const RasterGrid& raster_spec() const;
    const SyntheticTerrain& synthetic_spec() const;

private:
    std::variant<FlatTerrain, RasterGrid, SyntheticTerrain> model_;
};

/// Parses an ESRI ASCII grid (header keys case-insensitive, then
/// nrows x ncols values, first row northernmost).
RasterGrid parse_esri_ascii(std::istream& in, const std::string& source_name);

struct ObstacleResult {
    double z_o = 0.0;        // max sampled elevation along the segment
    double at_fraction = 0.0; // parameter of the (first) maximizing sample
};

/// Max terrain elevation along segment a-b, sampled at n+1 evenly spaced
/// parameters k/n where n is the smallest power of two with spacing <= step.
/// The sample set is symmetric under endpoint swap and nested under step
/// halving, so z_o is exchange-invariant and non-decreasing under refinement.
ObstacleResult largest_obstacle(const ElevationModel& m, const LocalPoint& a,
                                const LocalPoint& b, double step);

} // namespace droneplan
