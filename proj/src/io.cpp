#include "divuq/io.hpp"

#include <bit>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace divuq {

namespace {

void append_f32_le(std::string& out, double value) {
    const float f = static_cast<float>(value);
    if (!std::isfinite(f)) throw Error(ErrorKind::Data, "value not representable as finite binary32");
    const auto bits = std::bit_cast<std::uint32_t>(f);
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
}

double read_f32_le(const char* p) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) {
        bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[b])) << (8 * b);
    }
    return static_cast<double>(std::bit_cast<float>(bits));
}

template <class T>
T parse_number(std::string_view text, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::Format, std::string("cannot parse ") + what + " from '" + std::string(text) + "'");
    }
    return value;
}

VectorField2 single_member(const std::filesystem::path& path) {
    Ensemble2 e = read_ensemble(path);
    ensure(e.size() == 1, ErrorKind::Format,
           path.string() + ": expected a single-member file, found " + std::to_string(e.size()));
    return e[0];
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string() + ": " + std::strerror(errno));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

EnsembleFileHeader parse_ensemble_header(std::string_view bytes, std::size_t* payload_offset) {
    const std::size_t newline = bytes.find('\n');
    if (bytes.substr(0, kEnsembleMagic.size()) != kEnsembleMagic) {
        throw Error(ErrorKind::Format, "bad magic: not a DIVUQ1 file");
    }
    if (newline == std::string_view::npos) throw Error(ErrorKind::Format, "DIVUQ1 header line not terminated");

    std::vector<std::string_view> fields;
    std::string_view line = bytes.substr(0, newline);
    while (!line.empty()) {
        const std::size_t space = line.find(' ');
        fields.push_back(line.substr(0, space));
        if (space == std::string_view::npos) break;
        line.remove_prefix(space + 1);
    }
    if (fields.size() != 6 || fields[0] != kEnsembleMagic) {
        throw Error(ErrorKind::Format, "DIVUQ1 header must be 'DIVUQ1 nx ny dx dy n_members'");
    }

    EnsembleFileHeader h{parse_number<std::size_t>(fields[1], "nx"),
                         parse_number<std::size_t>(fields[2], "ny"),
                         parse_number<double>(fields[3], "dx"), parse_number<double>(fields[4], "dy"),
                         parse_number<std::size_t>(fields[5], "n_members")};
    ensure(h.nx >= 2 && h.ny >= 2, ErrorKind::Format, "DIVUQ1 header needs nx, ny >= 2");
    ensure(h.n_members >= 1, ErrorKind::Format, "DIVUQ1 header needs n_members >= 1");
    ensure(std::isfinite(h.dx) && std::isfinite(h.dy) && h.dx > 0.0 && h.dy > 0.0, ErrorKind::Format,
           "DIVUQ1 header needs dx, dy > 0");
    if (payload_offset) *payload_offset = newline + 1;
    return h;
}

std::string encode_ensemble(const Ensemble2& ensemble) {
    const auto& g = ensemble.grid();
    std::string out = std::string(kEnsembleMagic) + " " + std::to_string(g.nx()) + " " +
                      std::to_string(g.ny()) + " " + format_double(g.dx()) + " " +
                      format_double(g.dy()) + " " + std::to_string(ensemble.size()) + "\n";
    out.reserve(out.size() + ensemble.size() * 2 * g.vertex_count() * 4);
    for (const auto& member : ensemble.members()) {
        for (double x : member.u()) append_f32_le(out, x);
        for (double x : member.v()) append_f32_le(out, x);
    }
    return out;
}

Ensemble2 decode_ensemble(std::string_view bytes) {
    std::size_t offset = 0;
    const EnsembleFileHeader h = parse_ensemble_header(bytes, &offset);
    const UniformGrid2 grid(h.nx, h.ny, h.dx, h.dy);
    const std::size_t plane = grid.vertex_count();
    const std::size_t expected = h.n_members * 2 * plane * 4;
    if (bytes.size() - offset != expected) {
        throw Error(ErrorKind::Length, "DIVUQ1 payload has " + std::to_string(bytes.size() - offset) +
                                           " bytes, header implies " + std::to_string(expected));
    }

    std::vector<VectorField2> members;
    members.reserve(h.n_members);
    const char* p = bytes.data() + offset;
    for (std::size_t m = 0; m < h.n_members; ++m) {
        std::vector<double> u(plane), v(plane);
        for (std::size_t k = 0; k < plane; ++k, p += 4) u[k] = read_f32_le(p);
        for (std::size_t k = 0; k < plane; ++k, p += 4) v[k] = read_f32_le(p);
        members.emplace_back(grid, std::move(u), std::move(v));  // rejects NaN/Inf
    }
    return Ensemble2(grid, std::move(members));
}

Ensemble2 read_ensemble(const std::filesystem::path& path) {
    const std::string bytes = read_file_bytes(path);
    try {
        return decode_ensemble(bytes);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

void write_ensemble(const Ensemble2& ensemble, const std::filesystem::path& path) {
    write_file_bytes(path, encode_ensemble(ensemble));
}

void write_gaussian_model(const GaussianVectorField& model, const std::filesystem::path& mu_path,
                          const std::filesystem::path& sigma_path) {
    write_ensemble(Ensemble2(model.grid(), {model.mean_field()}), mu_path);
    write_ensemble(Ensemble2(model.grid(), {model.sigma_field()}), sigma_path);
}

GaussianVectorField read_gaussian_model(const std::filesystem::path& mu_path,
                                        const std::filesystem::path& sigma_path) {
    return GaussianVectorField(single_member(mu_path), single_member(sigma_path));
}

void write_scalar_field(const ScalarField2& field, const std::filesystem::path& path) {
    const auto& g = field.grid();
    VectorField2 member(g, {field.values().begin(), field.values().end()},
                        std::vector<double>(g.vertex_count(), 0.0));
    write_ensemble(Ensemble2(g, {std::move(member)}), path);
}

ScalarField2 read_scalar_field(const std::filesystem::path& path) {
    const VectorField2 member = single_member(path);
    return ScalarField2(member.grid(), {member.u().begin(), member.u().end()});
}

void write_gaussian_scalar(const GaussianScalarField& field, const std::filesystem::path& mu_path,
                           const std::filesystem::path& sigma_path) {
    write_scalar_field(field.mean_field(), mu_path);
    write_scalar_field(field.sigma_field(), sigma_path);
}

GaussianScalarField read_gaussian_scalar(const std::filesystem::path& mu_path,
                                         const std::filesystem::path& sigma_path) {
    const ScalarField2 mu = read_scalar_field(mu_path);
    const ScalarField2 sigma = read_scalar_field(sigma_path);
    ensure(mu.grid() == sigma.grid(), ErrorKind::Shape, "mu and sigma files have different grids");
    return GaussianScalarField(mu.grid(), {mu.values().begin(), mu.values().end()},
                               {sigma.values().begin(), sigma.values().end()});
}

std::string contours_to_csv(const std::vector<ContourSet>& sets) {
    std::string out = "polyline_id,x,y\n";
    std::size_t id = 0;
    for (const auto& set : sets) {
        for (const auto& line : set.polylines) {
            for (const auto& p : line) {
                out += std::to_string(id) + "," + format_double(p.x) + "," + format_double(p.y) + "\n";
            }
            ++id;
        }
    }
    return out;
}

std::vector<std::vector<std::string>> parse_simple_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    while (!text.empty()) {
        std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            std::vector<std::string> cells;
            std::size_t start = 0;
            for (;;) {
                const std::size_t comma = line.find(',', start);
                cells.emplace_back(line.substr(start, comma - start));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            rows.push_back(std::move(cells));
        }
        if (eol == std::string_view::npos) break;
        text.remove_prefix(eol + 1);
    }
    return rows;
}

std::vector<Polyline> contours_from_csv(std::string_view text) {
    const auto rows = parse_simple_csv(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"polyline_id", "x", "y"}) {
        throw Error(ErrorKind::Format, "contour CSV must start with 'polyline_id,x,y'");
    }
    std::map<std::size_t, Polyline> lines;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        ensure(rows[r].size() == 3, ErrorKind::Format, "contour CSV row needs 3 columns");
        lines[parse_number<std::size_t>(rows[r][0], "polyline_id")].push_back(
            {parse_number<double>(rows[r][1], "x"), parse_number<double>(rows[r][2], "y")});
    }
    std::vector<Polyline> out;
    for (auto& [id, line] : lines) out.push_back(std::move(line));
    return out;
}

std::string lcp_to_csv(const LcpField& field) {
    const auto& g = field.grid();
    std::string out = "i,j,x,y,lcp\n";
    for (std::size_t j = 0; j < field.height(); ++j) {
        for (std::size_t i = 0; i < field.width(); ++i) {
            out += std::to_string(i) + "," + std::to_string(j) + "," +
                   format_double(g.x(i) + 0.5 * g.dx()) + "," + format_double(g.y(j) + 0.5 * g.dy()) +
                   "," + format_double(field(i, j)) + "\n";
        }
    }
    return out;
}

LcpField lcp_from_csv(std::string_view text, double isovalue) {
    const auto rows = parse_simple_csv(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"i", "j", "x", "y", "lcp"}) {
        throw Error(ErrorKind::Format, "LCP CSV must start with 'i,j,x,y,lcp'");
    }
    ensure(rows.size() > 1, ErrorKind::Format, "LCP CSV has no cells");
    std::size_t width = 0, height = 0;
    double dx = 0.0, dy = 0.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        ensure(rows[r].size() == 5, ErrorKind::Format, "LCP CSV row needs 5 columns");
        const auto i = parse_number<std::size_t>(rows[r][0], "i");
        const auto j = parse_number<std::size_t>(rows[r][1], "j");
        width = std::max(width, i + 1);
        height = std::max(height, j + 1);
        if (i == 0 && j == 0) {
            dx = 2.0 * parse_number<double>(rows[r][2], "x");
            dy = 2.0 * parse_number<double>(rows[r][3], "y");
        }
    }
    ensure(rows.size() - 1 == width * height, ErrorKind::Shape, "LCP CSV does not cover a full raster");
    const UniformGrid2 grid(width + 1, height + 1, dx, dy);
    std::vector<double> p(width * height);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto i = parse_number<std::size_t>(rows[r][0], "i");
        const auto j = parse_number<std::size_t>(rows[r][1], "j");
        p[j * width + i] = parse_number<double>(rows[r][4], "lcp");
    }
    return LcpField(grid, isovalue, std::move(p));
}

std::string metrics_to_csv(const ErrorMetrics& m) {
    return "e_m,e_sigma,sse\n" + format_double(m.e_m) + "," + format_double(m.e_sigma) + "," +
           format_double(m.sse) + "\n";
}

}  // namespace divuq
