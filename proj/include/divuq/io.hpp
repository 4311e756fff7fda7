// DIVUQ1 ensemble files and CSV helpers.
//
// DIVUQ1 layout: one ASCII header line
//   "DIVUQ1 <nx> <ny> <dx> <dy> <n_members>\n"
// followed by n_members blocks, each the u-plane then the v-plane, each plane
// nx * ny little-endian IEEE-754 binary32 values in j * nx + i order.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "divuq/contour.hpp"
#include "divuq/divergence.hpp"
#include "divuq/gaussian_fit.hpp"
#include "divuq/grid.hpp"
#include "divuq/lcp.hpp"
#include "divuq/mc_oracle.hpp"

namespace divuq {

struct EnsembleFileHeader {
    std::size_t nx;
    std::size_t ny;
    double dx;
    double dy;
    std::size_t n_members;
};

inline constexpr std::string_view kEnsembleMagic = "DIVUQ1";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
std::string csv_escape(std::string_view field);

std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

EnsembleFileHeader parse_ensemble_header(std::string_view bytes, std::size_t* payload_offset);
std::string encode_ensemble(const Ensemble2& ensemble);
Ensemble2 decode_ensemble(std::string_view bytes);

Ensemble2 read_ensemble(const std::filesystem::path& path);
void write_ensemble(const Ensemble2& ensemble, const std::filesystem::path& path);

// Gaussian models are two single-member files: means and sigmas.
void write_gaussian_model(const GaussianVectorField& model, const std::filesystem::path& mu_path,
                          const std::filesystem::path& sigma_path);
GaussianVectorField read_gaussian_model(const std::filesystem::path& mu_path,
                                        const std::filesystem::path& sigma_path);

// Scalar fields are single-member files with the values in the u-plane and
// zeros in the v-plane.
void write_scalar_field(const ScalarField2& field, const std::filesystem::path& path);
ScalarField2 read_scalar_field(const std::filesystem::path& path);

void write_gaussian_scalar(const GaussianScalarField& field, const std::filesystem::path& mu_path,
                           const std::filesystem::path& sigma_path);
GaussianScalarField read_gaussian_scalar(const std::filesystem::path& mu_path,
                                         const std::filesystem::path& sigma_path);

/// Columns: polyline_id,x,y
std::string contours_to_csv(const std::vector<ContourSet>& sets);
std::vector<Polyline> contours_from_csv(std::string_view text);

/// Columns: i,j,x,y,lcp with x, y at cell centres.
std::string lcp_to_csv(const LcpField& field);
LcpField lcp_from_csv(std::string_view text, double isovalue = 0.0);

/// Columns: e_m,e_sigma,sse
std::string metrics_to_csv(const ErrorMetrics& metrics);

/// Splits RFC-4180 text without quoted fields into rows of cells; the header
/// row is returned as row 0.
std::vector<std::vector<std::string>> parse_simple_csv(std::string_view text);

}  // namespace divuq
