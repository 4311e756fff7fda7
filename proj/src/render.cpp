#include "divuq/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "divuq/io.hpp"

namespace divuq {

namespace {

std::uint8_t blend(std::uint8_t a, std::uint8_t b, double f) {
    const double v = static_cast<double>(a) + f * (static_cast<double>(b) - static_cast<double>(a));
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

double normalise(double value, double lo, double hi) {
    return (std::clamp(value, lo, hi) - lo) / (hi - lo);
}

void check_range(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        throw Error(ErrorKind::Range, "colormap range needs lo < hi");
    }
}

void draw_line(RgbRaster& raster, long x0, long y0, long x1, long y1, Rgb color) {
    const long dx = std::labs(x1 - x0);
    const long dy = -std::labs(y1 - y0);
    const long sx = x0 < x1 ? 1 : -1;
    const long sy = y0 < y1 ? 1 : -1;
    long err = dx + dy;
    for (;;) {
        if (x0 >= 0 && y0 >= 0 && x0 < static_cast<long>(raster.width) &&
            y0 < static_cast<long>(raster.height)) {
            raster.at(static_cast<std::size_t>(x0), static_cast<std::size_t>(y0)) = color;
        }
        if (x0 == x1 && y0 == y1) break;
        const long e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

}  // namespace

Rgb parse_rgb(std::string_view text) {
    Rgb out;
    std::uint8_t* channels[3] = {&out.r, &out.g, &out.b};
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int c = 0; c < 3; ++c) {
        unsigned v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{} || v > 255) {
            throw Error(ErrorKind::Usage, "bad colour '" + std::string(text) + "', expected r,g,b");
        }
        *channels[c] = static_cast<std::uint8_t>(v);
        p = next;
        if (c < 2) {
            if (p == end || *p != ',') {
                throw Error(ErrorKind::Usage, "bad colour '" + std::string(text) + "', expected r,g,b");
            }
            ++p;
        }
    }
    if (p != end) throw Error(ErrorKind::Usage, "bad colour '" + std::string(text) + "'");
    return out;
}

Colormap::Colormap(std::vector<Rgb> control_points) : points_(std::move(control_points)) {
    ensure(points_.size() >= 2, ErrorKind::Format, "a colormap needs at least two control points");
}

const Colormap& Colormap::builtin() {
    static const Colormap map({
        {49, 54, 149},   {62, 96, 170},   {85, 136, 190},  {116, 173, 209},
        {153, 202, 225}, {189, 226, 238}, {224, 243, 248}, {245, 251, 210},
        {255, 245, 175}, {254, 224, 144}, {253, 191, 113}, {250, 152, 87},
        {244, 109, 67},  {225, 68, 48},   {198, 32, 39},   {165, 0, 38},
    });
    return map;
}

Colormap Colormap::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open colormap " + path.string());
    std::vector<Rgb> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        int r, g, b;
        if (!(fields >> r)) continue;
        if (!(fields >> g >> b) || r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
            throw Error(ErrorKind::Format,
                        path.string() + ":" + std::to_string(line_no) + ": expected 'r g b' in 0..255");
        }
        points.push_back({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                          static_cast<std::uint8_t>(b)});
    }
    return Colormap(std::move(points));
}

Rgb Colormap::map(double t) const noexcept {
    t = std::isnan(t) ? 0.0 : std::clamp(t, 0.0, 1.0);
    const double pos = t * static_cast<double>(points_.size() - 1);
    const auto k = std::min(static_cast<std::size_t>(pos), points_.size() - 2);
    const double f = pos - static_cast<double>(k);
    const Rgb& a = points_[k];
    const Rgb& b = points_[k + 1];
    return {blend(a.r, b.r, f), blend(a.g, b.g, f), blend(a.b, b.b, f)};
}

RgbRaster render_colormap(const ScalarField2& field, double lo, double hi, const Colormap& colormap) {
    check_range(lo, hi);
    const auto& grid = field.grid();
    RgbRaster raster{grid.nx(), grid.ny(), std::vector<Rgb>(grid.vertex_count())};
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            raster.at(i, grid.ny() - 1 - j) = colormap.map(normalise(field(i, j), lo, hi));
        }
    }
    return raster;
}

RgbRaster render_colormap(const LcpField& field, double lo, double hi, const Colormap& colormap) {
    check_range(lo, hi);
    RgbRaster raster{field.width(), field.height(), std::vector<Rgb>(field.probabilities().size())};
    for (std::size_t j = 0; j < field.height(); ++j) {
        for (std::size_t i = 0; i < field.width(); ++i) {
            raster.at(i, field.height() - 1 - j) = colormap.map(normalise(field(i, j), lo, hi));
        }
    }
    return raster;
}

RgbRaster overlay_contours(RgbRaster raster, const ContourSet& contours, const UniformGrid2& grid,
                           Rgb color) {
    double offset = 0.0;
    if (raster.width == grid.nx() && raster.height == grid.ny()) {
        offset = 0.0;
    } else if (raster.width == grid.nx() - 1 && raster.height == grid.ny() - 1) {
        offset = -0.5;  // pixel centres sit at cell centres
    } else {
        throw Error(ErrorKind::Shape, "raster size matches neither the vertices nor the cells of the grid");
    }
    auto to_pixel = [&](const Point2& p) {
        const long px = std::lround(p.x / grid.dx() + offset);
        const long row = std::lround(p.y / grid.dy() + offset);
        return std::pair<long, long>{px, static_cast<long>(raster.height) - 1 - row};
    };

    for (const auto& line : contours.polylines) {
        if (line.size() == 1) {
            const auto [x, y] = to_pixel(line.front());
            draw_line(raster, x, y, x, y, color);
        }
        for (std::size_t k = 1; k < line.size(); ++k) {
            const auto [x0, y0] = to_pixel(line[k - 1]);
            const auto [x1, y1] = to_pixel(line[k]);
            draw_line(raster, x0, y0, x1, y1, color);
        }
    }
    return raster;
}

std::string encode_ppm(const RgbRaster& raster) {
    std::string out = "P6\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
    out.reserve(out.size() + 3 * raster.pixels.size());
    for (const auto& p : raster.pixels) {
        out.push_back(static_cast<char>(p.r));
        out.push_back(static_cast<char>(p.g));
        out.push_back(static_cast<char>(p.b));
    }
    return out;
}

RgbRaster decode_ppm(std::string_view bytes) {
    std::size_t pos = 0;
    auto token = [&]() {
        while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        return std::string(bytes.substr(start, pos - start));
    };
    if (token() != "P6") throw Error(ErrorKind::Format, "not a binary PPM (P6)");
    const std::string w = token(), h = token(), maxval = token();
    if (maxval != "255") throw Error(ErrorKind::Format, "only 8-bit PPM is supported");
    ++pos;  // single whitespace byte before the raster

    RgbRaster raster;
    raster.width = std::stoul(w);
    raster.height = std::stoul(h);
    const std::size_t n = raster.width * raster.height;
    if (pos > bytes.size() || bytes.size() - pos != 3 * n) {
        throw Error(ErrorKind::Length, "PPM payload length does not match its header");
    }
    raster.pixels.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        raster.pixels[k] = {static_cast<std::uint8_t>(bytes[pos + 3 * k]),
                            static_cast<std::uint8_t>(bytes[pos + 3 * k + 1]),
                            static_cast<std::uint8_t>(bytes[pos + 3 * k + 2])};
    }
    return raster;
}

void write_ppm(const RgbRaster& raster, const std::filesystem::path& path) {
    write_file_bytes(path, encode_ppm(raster));
}

RgbRaster read_ppm(const std::filesystem::path& path) { return decode_ppm(read_file_bytes(path)); }

}  // namespace divuq
