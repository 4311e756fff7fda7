#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include "divuq/divergence.hpp"
#include "divuq/io.hpp"
#include "divuq/synthetic.hpp"
#include "oracles.hpp"

using namespace divuq;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected divuq::Error");
    return ErrorKind::Usage;
}

std::string le32(float f) {
    const auto bits = std::bit_cast<std::uint32_t>(f);
    std::string out(4, '\0');
    for (int b = 0; b < 4; ++b) out[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    return out;
}

Ensemble2 random_ensemble(std::mt19937_64& rng) {
    const std::size_t nx = 2 + rng() % 30, ny = 2 + rng() % 30, m = 1 + rng() % 5;
    std::uniform_real_distribution<double> spacing(0.01, 10.0);
    const UniformGrid2 g(nx, ny, spacing(rng), spacing(rng));
    std::normal_distribution<float> z(0.0f, 100.0f);
    std::vector<VectorField2> members;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> u(g.vertex_count()), v(g.vertex_count());
        for (auto& x : u) x = z(rng);
        for (auto& x : v) x = z(rng);
        members.emplace_back(g, u, v);
    }
    return Ensemble2(g, members);
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("divuq_io_" + std::to_string(std::random_device{}()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("all-zero 2x2 file") {
    const std::string bytes = std::string("DIVUQ1 2 2 1 1 1\n") + std::string(32, '\0');
    const auto e = decode_ensemble(bytes);
    CHECK(e.grid() == UniformGrid2(2, 2, 1.0, 1.0));
    REQUIRE(e.size() == 1);
    CHECK(e[0] == VectorField2(e.grid(), std::vector<double>(4), std::vector<double>(4)));
    CHECK(encode_ensemble(e) == bytes);
}

TEST_CASE("hand-assembled file follows j * nx + i order, u-plane first") {
    std::string bytes = "DIVUQ1 3 2 0.5 0.25 1\n";
    for (int k = 0; k < 6; ++k) bytes += le32(k == 1 ? 1.0f : 0.0f);
    for (int k = 0; k < 6; ++k) bytes += le32(k == 4 ? -2.5f : 0.0f);
    const auto e = decode_ensemble(bytes);
    CHECK(e.grid().dx() == 0.5);
    CHECK(e.grid().dy() == 0.25);
    CHECK(e[0].u()[1] == 1.0);
    CHECK(e[0].u()[e.grid().index(1, 0)] == 1.0);
    CHECK(e[0].v()[e.grid().index(1, 1)] == -2.5);
    CHECK(std::count(e[0].u().begin(), e[0].u().end(), 0.0) == 5);
}

TEST_CASE("header parsing") {
    std::size_t offset = 0;
    const auto h = parse_ensemble_header("DIVUQ1 68 68 0.25 1e-3 15\nrest", &offset);
    CHECK(h.nx == 68);
    CHECK(h.ny == 68);
    CHECK(h.dx == 0.25);
    CHECK(h.dy == 1e-3);
    CHECK(h.n_members == 15);
    CHECK(offset == std::string_view("DIVUQ1 68 68 0.25 1e-3 15\n").size());
}

TEST_CASE("malformed files") {
    const std::string good = encode_ensemble(Ensemble2(
        UniformGrid2(2, 2, 1.0, 1.0), {VectorField2(UniformGrid2(2, 2, 1.0, 1.0), {1, 2, 3, 4}, {5, 6, 7, 8})}));
    CHECK(kind_of([&] { decode_ensemble("DIVUQ2" + good.substr(6)); }) == ErrorKind::Format);
    CHECK(kind_of([&] { decode_ensemble("garbage"); }) == ErrorKind::Format);
    CHECK(kind_of([&] { decode_ensemble("DIVUQ1 2 2 1 1\n"); }) == ErrorKind::Format);
    CHECK(kind_of([&] { decode_ensemble("DIVUQ1 1 2 1 1 1\n" + std::string(16, '\0')); }) == ErrorKind::Format);
    CHECK(kind_of([&] { decode_ensemble("DIVUQ1 2 2 0 1 1\n" + std::string(32, '\0')); }) == ErrorKind::Format);
    CHECK(kind_of([&] { decode_ensemble("DIVUQ1 2 2 1 1 0\n"); }) == ErrorKind::Format);
    CHECK(kind_of([&] { decode_ensemble(good.substr(0, good.size() - 1)); }) == ErrorKind::Length);
    CHECK(kind_of([&] { decode_ensemble(good + "x"); }) == ErrorKind::Length);

    std::string nan_file = good;
    const std::string nan = le32(std::numeric_limits<float>::quiet_NaN());
    nan_file.replace(nan_file.size() - 4, 4, nan);
    CHECK(kind_of([&] { decode_ensemble(nan_file); }) == ErrorKind::Data);
    std::string inf_file = good;
    inf_file.replace(good.find('\n') + 1, 4, le32(std::numeric_limits<float>::infinity()));
    CHECK(kind_of([&] { decode_ensemble(inf_file); }) == ErrorKind::Data);
}

TEST_CASE("round trips are exact and writes are deterministic") {
    TempDir dir;
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        const auto e = random_ensemble(rng);
        CHECK(decode_ensemble(encode_ensemble(e)) == e);
        const auto a = dir.path / "a.duq", b = dir.path / "b.duq";
        write_ensemble(e, a);
        write_ensemble(e, b);
        CHECK(read_file_bytes(a) == read_file_bytes(b));
        CHECK(read_ensemble(a) == e);
    }
}

TEST_CASE("values that do not fit binary32 are rejected on write") {
    const UniformGrid2 g(2, 2, 1.0, 1.0);
    const Ensemble2 e(g, {VectorField2(g, {1e300, 0, 0, 0}, {0, 0, 0, 0})});
    CHECK_THROWS_AS(encode_ensemble(e), Error);
}

TEST_CASE("file size of a 20-member 500x500 ensemble") {
    TempDir dir;
    const UniformGrid2 g(500, 500, 1.0, 1.0);
    const auto e = generate_synthetic(SyntheticKind::WindLike, g, 20, 0.1, 1);
    const auto path = dir.path / "big.duq";
    write_ensemble(e, path);
    CHECK(fs::file_size(path) == std::string("DIVUQ1 500 500 1 1 20\n").size() + 20ull * 2 * 500 * 500 * 4);
}

TEST_CASE("unwritable and missing paths are io errors") {
    TempDir dir;
    const UniformGrid2 g(2, 2, 1.0, 1.0);
    const Ensemble2 e(g, {VectorField2(g, {0, 0, 0, 0}, {0, 0, 0, 0})});
    CHECK(kind_of([&] { write_ensemble(e, dir.path / "missing" / "x.duq"); }) == ErrorKind::Io);
    CHECK(kind_of([&] { read_ensemble(dir.path / "nope.duq"); }) == ErrorKind::Io);
    CHECK(kind_of([&] { write_ensemble(e, dir.path); }) == ErrorKind::Io);
}

TEST_CASE("gaussian and scalar files") {
    TempDir dir;
    const UniformGrid2 g(4, 3, 0.5, 2.0);
    const GaussianVectorField model(g, std::vector<double>(12, 1.5), std::vector<double>(12, -2.0),
                                    std::vector<double>(12, 0.25), std::vector<double>(12, 0.125));
    write_gaussian_model(model, dir.path / "mu.duq", dir.path / "sigma.duq");
    CHECK(read_gaussian_model(dir.path / "mu.duq", dir.path / "sigma.duq") == model);
    CHECK(read_ensemble(dir.path / "mu.duq").size() == 1);

    const auto div = propagate_divergence(model);
    write_gaussian_scalar(div, dir.path / "dmu.duq", dir.path / "dsigma.duq");
    const auto back = read_gaussian_scalar(dir.path / "dmu.duq", dir.path / "dsigma.duq");
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(back.mu()[k] == static_cast<double>(static_cast<float>(div.mu()[k])));
        CHECK(back.sigma()[k] == static_cast<double>(static_cast<float>(div.sigma()[k])));
    }
    const auto as_ensemble = read_ensemble(dir.path / "dmu.duq");
    for (double v : as_ensemble[0].v()) CHECK(v == 0.0);

    write_gaussian_model(model, dir.path / "mu2.duq", dir.path / "s2.duq");
    const UniformGrid2 wider(4, 3, 1.0, 2.0);
    write_ensemble(Ensemble2(wider, {VectorField2(wider, std::vector<double>(12, 1.0), std::vector<double>(12, 1.0))}),
                   dir.path / "other.duq");
    CHECK(kind_of([&] { read_gaussian_model(dir.path / "mu2.duq", dir.path / "other.duq"); }) == ErrorKind::Shape);
}

TEST_CASE("csv formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.89) == "-0.89");
    CHECK(format_double(2.0) == "2");
    std::mt19937_64 rng(2);
    for (int k = 0; k < 1000; ++k) {
        const double x = std::bit_cast<double>(rng());
        if (!std::isfinite(x)) continue;
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("contour and lcp csv round trips") {
    std::vector<ContourSet> sets{{0.5, {{{0, 0}, {0.5, 1.25}}, {{2, 2}, {3, 3}, {2, 2}}}}, {0.5, {{{1, 1}, {1.5, 1}}}}};
    const std::string text = contours_to_csv(sets);
    CHECK(text.rfind("polyline_id,x,y\n", 0) == 0);
    CHECK(text.find("\n2,1,1\n") != std::string::npos);
    const auto lines = contours_from_csv(text);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == sets[0].polylines[0]);
    CHECK(lines[1] == sets[0].polylines[1]);
    CHECK(lines[2] == sets[1].polylines[0]);

    const UniformGrid2 g(4, 3, 0.5, 2.0);
    const LcpField f(g, -2.525, {0, 0.125, 0.875, 1, 0.3, 1.0 / 3});
    const std::string lcp_text = lcp_to_csv(f);
    CHECK(lcp_text.rfind("i,j,x,y,lcp\n0,0,0.25,1,0\n", 0) == 0);
    CHECK(lcp_from_csv(lcp_text, -2.525) == f);
    CHECK(metrics_to_csv(ErrorMetrics{0.1, 0.25, 2}) == "e_m,e_sigma,sse\n0.1,0.25,2\n");
    CHECK(parse_simple_csv("a,b\n1,2\n") == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", "2"}});
}

TEST_CASE("synthetic ensembles") {
    const UniformGrid2 g(60, 50, 0.1, 0.1);
    for (auto kind : {SyntheticKind::SourceSink, SyntheticKind::Vortex, SyntheticKind::WindLike}) {
        const auto base = synthetic_base(kind, g);
        const auto e = generate_synthetic(kind, g, 3, 0.0, 5);
        for (std::size_t k = 0; k < e.size(); ++k) CHECK(e[k] == base);
        CHECK(generate_synthetic(kind, g, 4, 0.2, 9) == generate_synthetic(kind, g, 4, 0.2, 9));
        CHECK_FALSE(generate_synthetic(kind, g, 4, 0.2, 9) == generate_synthetic(kind, g, 4, 0.2, 10));
    }
    CHECK(parse_synthetic_kind("source-sink") == SyntheticKind::SourceSink);
    CHECK(parse_synthetic_kind("vortex") == SyntheticKind::Vortex);
    CHECK(parse_synthetic_kind("wind-like") == SyntheticKind::WindLike);
    CHECK(kind_of([] { parse_synthetic_kind("tornado"); }) == ErrorKind::Usage);
    CHECK(kind_of([&] { generate_synthetic(SyntheticKind::Vortex, g, 1, 0.1, 0); }) == ErrorKind::InsufficientEnsemble);
}

TEST_CASE("source-sink divergence signs at the feature centres") {
    const UniformGrid2 g(101, 101, 0.01, 0.01);
    const auto div = divergence_deterministic(synthetic_base(SyntheticKind::SourceSink, g));
    CHECK(div(30, 50) > 0.0);
    CHECK(div(70, 50) < 0.0);
    const auto rot = divergence_deterministic(synthetic_base(SyntheticKind::Vortex, g));
    CHECK(std::abs(rot(50, 50)) < 1e-9);
}

TEST_CASE("fitted noise sigma follows the chi-square coverage") {
    const UniformGrid2 g(100, 100, 1.0, 1.0);
    const double s = 0.3;
    const auto fit = fit_gaussian(generate_synthetic(SyntheticKind::WindLike, g, 20, s, 17));
    std::size_t within = 0;
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
        within += std::abs(fit.sigma_u()[k] - s) <= 0.25 * s;
        within += std::abs(fit.sigma_v()[k] - s) <= 0.25 * s;
    }
    const double n = 2.0 * g.vertex_count();
    const double p = oracle::kChi2CoverageM20_075_125;
    CHECK(std::abs(within / n - p) <= 4 * std::sqrt(p * (1 - p) / n));
}
