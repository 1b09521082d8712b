#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "kmsnr/io.hpp"
#include "kmsnr/models.hpp"

namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    const fs::path d = KMSNR_TEST_TMP;
    fs::create_directories(d);
    return d;
}

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + KMSNR_CLI + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream s;
    s << is.rdbuf();
    return s.str();
}

std::vector<kmsnr::BoundarySample> boundary(const std::string& args, const std::string& name) {
    const fs::path out = tmp_dir() / name;
    REQUIRE(run("boundary " + args + " --out " + out.string()) == 0);
    std::ifstream is(out);
    return kmsnr::read_boundary_csv(is);
}

std::vector<std::pair<double, double>> polyline(const std::string& svg) {
    const auto start = svg.find("points=\"", svg.find("<polyline"));
    REQUIRE(start != std::string::npos);
    const auto end = svg.find('"', start + 8);
    std::istringstream is(svg.substr(start + 8, end - start - 8));
    std::vector<std::pair<double, double>> pts;
    std::string tok;
    while (is >> tok) {
        const auto comma = tok.find(',');
        pts.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    return pts;
}

// SVG user units are data coordinates with y flipped.
std::vector<std::pair<double, double>> plot_points(const std::string& args, const std::string& name) {
    const fs::path out = tmp_dir() / name;
    REQUIRE(run("plot " + args + " --out " + out.string()) == 0);
    auto pts = polyline(slurp(out));
    for (auto& p : pts) p.second = -p.second;
    return pts;
}

}  // namespace

TEST_CASE("boundary examples") {
    const auto disc = boundary("--n 2 --a 1 --samples 4", "b1.csv");
    REQUIRE(disc.size() == 4);
    for (const auto& s : disc) CHECK(s.support == doctest::Approx(0.5).epsilon(1e-11));

    const auto zero = boundary("--n 1 --a 5 --samples 3", "b2.csv");
    REQUIRE(zero.size() == 3);
    for (const auto& s : zero) CHECK(s.point == kmsnr::Complex{});

    const auto j3 = boundary("--n 3 --a 2 --samples 360", "b3.csv");
    REQUIRE(j3.size() == 360);
    CHECK(j3[180].theta == doctest::Approx(std::numbers::pi));
    CHECK(j3[180].point.real() == doctest::Approx(-2.0).epsilon(1e-11));
    CHECK(std::abs(j3[180].point.imag()) < 1e-11);
    for (std::size_t k = 1; k < j3.size(); ++k) CHECK(j3[k].theta > j3[k - 1].theta);

    const auto sub = boundary("--n 3 --a 2 --j 2 --samples 8", "b4.csv");
    CHECK(sub[4].support == doctest::Approx(2.0));
}

TEST_CASE("usage and I/O errors") {
    const std::string out = (tmp_dir() / "err.csv").string();
    CHECK(run("boundary --n 2 --a 1x --out " + out) == 2);
    CHECK(run("boundary --n 0 --a 1 --out " + out) == 2);
    CHECK(run("boundary --n 2 --a 1 --samples 2 --out " + out) == 2);
    CHECK(run("boundary --n 2 --a 1") == 2);
    CHECK(run("boundary --n 3 --a 1 --j 4 --out " + out) == 2);
    CHECK(run("frobnicate --n 2") == 2);
    CHECK(run("") == 2);
    CHECK(run("verify --suite nope") == 2);
    CHECK(run("verify --a 2q") == 2);
    CHECK(run("kipp --n 17 --a 0.5 --out " + out) == 2);
    CHECK(run("boundary --n 2 --a 1 --out /nonexistent-dir/x.csv") == 3);
    CHECK(run("--help") == 0);
}

TEST_CASE("radius") {
    const fs::path out = tmp_dir() / "radius.json";
    REQUIRE(run("radius --n 4 --a 1 --out " + out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("numerical_radius").get<double>() > 0.5);
    CHECK(run("radius --n 3 --a 0.5") == 0);
}

TEST_CASE("kipp") {
    const fs::path out = tmp_dir() / "kipp.json";
    REQUIRE(run("kipp --n 4 --a 0.5 --samples 360 --out " + out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("degree") == 4);
    CHECK(doc.at("coefficients").size() == 15);
    CHECK(doc.at("factor_probe").at("summary") == "no real linear/quadratic factor detected");
}

TEST_CASE("verify") {
    const fs::path out = tmp_dir() / "verify.json";
    CHECK(run("verify --out " + out.string()) == 0);
    const auto full = nlohmann::json::parse(slurp(out));
    CHECK(full.at("results").size() > 100);

    const fs::path unit = tmp_dir() / "verify_unit.json";
    REQUIRE(run("verify --a 1.0 --n 4 --out " + unit.string()) == 0);
    std::size_t seen = 0;
    const auto unit_doc = nlohmann::json::parse(slurp(unit));
    for (const auto& r : unit_doc.at("results")) {
        if (r.at("id") != "disc_and_segment") continue;
        ++seen;
        CHECK(r.at("status") == "pass");
        CHECK(r.at("measured").at("segment_present") == 1.0);
        CHECK(r.at("measured").at("disc") == 0.0);
    }
    CHECK(seen == 1);

    const fs::path skipped = tmp_dir() / "verify_skip.json";
    REQUIRE(run("verify --n-max 1 --out " + skipped.string()) == 0);
    const auto skip_doc = nlohmann::json::parse(slurp(skipped));
    for (const auto& r : skip_doc.at("results")) CHECK(r.at("status") == "skip");

    const fs::path again = tmp_dir() / "verify_again.json";
    REQUIRE(run("verify --n 2 3 --a 0.5 2 --suite disc_and_segment,nilpotency --out " + again.string()) == 0);
    const fs::path again2 = tmp_dir() / "verify_again2.json";
    REQUIRE(run("verify --n 2 3 --a 0.5 2 --suite disc_and_segment,nilpotency --out " + again2.string()) == 0);
    CHECK(slurp(again) == slurp(again2));
}

TEST_CASE("plot") {
    SUBCASE("J_2(1) is a circle") {
        const auto pts = plot_points("--n 2 --a 1 --samples 720", "p1.svg");
        REQUIRE(pts.size() == 721);
        double worst = 0.0;
        for (const auto& [x, y] : pts) worst = std::max(worst, std::abs(std::hypot(x, y) - 0.5));
        CHECK(worst < 1e-3);
        CHECK(pts.front() == pts.back());
    }
    SUBCASE("J_4(1) has a flat edge at x = -1/2") {
        const auto pts = plot_points("--n 4 --a 1 --samples 720", "p2.svg");
        double min_x = INFINITY, lo = INFINITY, hi = -INFINITY;
        for (const auto& p : pts) min_x = std::min(min_x, p.first);
        for (const auto& [x, y] : pts) {
            if (x > -0.5 + 1e-3) continue;
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        CHECK(min_x == doctest::Approx(-0.5).epsilon(1e-5));
        CHECK(hi - lo > 0.1);
    }
    SUBCASE("three samples make a triangle") {
        const fs::path out = tmp_dir() / "p3.svg";
        REQUIRE(run("plot --n 3 --a 2 --samples 3 --out " + out.string()) == 0);
        const std::string svg = slurp(out);
        CHECK(polyline(svg).size() == 4);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
}

TEST_CASE("outputs are byte-deterministic") {
    for (const std::string verb : {"boundary", "plot", "kipp"}) {
        const fs::path a = tmp_dir() / ("det_a_" + verb), b = tmp_dir() / ("det_b_" + verb);
        REQUIRE(run(verb + " --n 5 --a 1.3+0.2i --samples 90 --out " + a.string()) == 0);
        REQUIRE(run(verb + " --n 5 --a 1.3+0.2i --samples 90 --out " + b.string()) == 0);
        CHECK(slurp(a) == slurp(b));
    }
}

TEST_CASE("CSV round-trip reproduces the library samples") {
    const auto rows = boundary("--n 4 --a 0.7-0.3i --samples 45", "rt.csv");
    const auto ref = kmsnr::boundary_sample(kmsnr::kms(4, {0.7, -0.3}), 45);
    REQUIRE(rows.size() == ref.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(std::abs(rows[k].point - ref[k].point) <= 1e-11);
        CHECK(std::abs(rows[k].support - ref[k].support) <= 1e-11);
        CHECK(rows[k].multiplicity == ref[k].multiplicity);
    }
}
