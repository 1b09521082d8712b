#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kmsnr/errors.hpp"
#include "kmsnr/io.hpp"
#include "kmsnr/models.hpp"

using namespace kmsnr;

TEST_CASE("parse_complex") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(parse_complex("-2i") == Complex(0.0, -2.0));
    CHECK(parse_complex("1.5+2i") == Complex(1.5, 2.0));
    CHECK(parse_complex("3-4i") == Complex(3.0, -4.0));
    CHECK(parse_complex("i") == Complex(0.0, 1.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("1e-3+2e1i") == Complex(1e-3, 20.0));
    for (const char* bad : {"", "abc", "1+", "1 + 2i", "2ii", "1.5x", "nan", "inf"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_complex(bad), InvalidParameter);
    }
}

TEST_CASE("format_complex round-trips") {
    CHECK(format_complex(Complex(1.0, 2.0)) == "1+2i");
    CHECK(format_complex(Complex(0.0, 2.0)) == "2i");
    CHECK(format_complex(Complex(1.5, 0.0)) == "1.5");
    CHECK(format_complex(Complex(3.0, -4.0)) == "3-4i");
    for (Complex z : {Complex(0.1, -0.7), Complex(-2.0, 0.0), Complex(0.0, -1.0), Complex(1e-5, 3e4)}) {
        const Complex back = parse_complex(format_complex(z));
        CHECK(std::abs(back - z) <= 1e-11 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("boundary CSV") {
    const auto samples = boundary_sample(kms(3, 2.0), 8);
    std::ostringstream os;
    write_boundary_csv(os, samples);
    const std::string text = os.str();
    CHECK(text.rfind("theta,support,re,im,multiplicity\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
    CHECK(text.find("-0,") == std::string::npos);

    std::istringstream is(text);
    const auto back = read_boundary_csv(is);
    REQUIRE(back.size() == samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        CHECK(back[k].theta == doctest::Approx(samples[k].theta).epsilon(1e-11));
        CHECK(std::abs(back[k].support - samples[k].support) <= 1e-11 * (1 + std::abs(samples[k].support)));
        CHECK(std::abs(back[k].point - samples[k].point) <= 1e-11 * (1 + std::abs(samples[k].point)));
        CHECK(back[k].multiplicity == samples[k].multiplicity);
    }

    std::istringstream bad("theta,support\n1,2\n");
    CHECK_THROWS_AS(read_boundary_csv(bad), InvalidParameter);
}

TEST_CASE("boundary SVG") {
    const auto samples = boundary_sample(kms(2, 1.0), 3);
    std::ostringstream a, b;
    write_boundary_svg(a, samples);
    write_boundary_svg(b, samples);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("<svg") != std::string::npos);
    CHECK(a.str().find("viewBox") != std::string::npos);
    CHECK(a.str().find("<polyline") != std::string::npos);
    CHECK(a.str().find("</svg>") != std::string::npos);
}

TEST_CASE("Kippenhahn JSON") {
    const ComplexMatrix j = kms(2, 1.0);
    const auto p = kipp_coeffs(j);
    const auto probe = factor_probe(p, boundary_sample(j, 60));
    std::ostringstream os;
    write_kipp_json(os, p, probe);
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc.at("degree") == 2);
    CHECK(doc.at("coefficients").size() == 6);
    CHECK(doc.at("factor_probe").at("quadratic").size() >= 1);
    for (const auto& c : doc.at("coefficients")) {
        const int x = c.at("x"), y = c.at("y"), z = c.at("z");
        CHECK(x + y + z == 2);
        if (z == 2) CHECK(c.at("value").get<double>() == doctest::Approx(1.0));
    }
}
