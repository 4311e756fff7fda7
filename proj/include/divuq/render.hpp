// Colormapped rasters, contour overlays and binary PPM (P6) output.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "divuq/contour.hpp"
#include "divuq/grid.hpp"
#include "divuq/lcp.hpp"

namespace divuq {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Rgb&) const = default;
};

/// Parses "r,g,b" (0..255 each). Throws ErrorKind::Usage on bad input.
Rgb parse_rgb(std::string_view text);

/// Piecewise-linear lookup table over evenly spaced control points.
class Colormap {
public:
    explicit Colormap(std::vector<Rgb> control_points);

    /// 16-entry blue -> pale yellow -> red ramp.
    static const Colormap& builtin();

    /// Text file, one "r g b" triple per line; blank lines and '#' comments
    /// are skipped. At least two entries.
    static Colormap from_file(const std::filesystem::path& path);

    /// t is clamped to [0, 1].
    Rgb map(double t) const noexcept;

    const std::vector<Rgb>& control_points() const noexcept { return points_; }

private:
    std::vector<Rgb> points_;
};

/// Row 0 is the top of the image.
struct RgbRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb> pixels;

    Rgb& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    const Rgb& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    bool operator==(const RgbRaster&) const = default;
};

/// One pixel per vertex. Values are clamped to [lo, hi]. Throws
/// ErrorKind::Range unless lo < hi.
RgbRaster render_colormap(const ScalarField2& field, double lo, double hi, const Colormap& colormap);

/// One pixel per cell.
RgbRaster render_colormap(const LcpField& field, double lo, double hi, const Colormap& colormap);

/// Draws each polyline with 1-pixel Bresenham segments. The raster must be
/// per-vertex (nx by ny) or per-cell (nx-1 by ny-1) for the given grid.
RgbRaster overlay_contours(RgbRaster raster, const ContourSet& contours, const UniformGrid2& grid,
                           Rgb color);

std::string encode_ppm(const RgbRaster& raster);
RgbRaster decode_ppm(std::string_view bytes);
void write_ppm(const RgbRaster& raster, const std::filesystem::path& path);
RgbRaster read_ppm(const std::filesystem::path& path);

}  // namespace divuq
