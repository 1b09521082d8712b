#include "kmsnr/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "kmsnr/errors.hpp"

namespace kmsnr {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) throw InvalidParameter("malformed number: '" + whole + "'");
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end != begin + s.size() || errno == ERANGE || !std::isfinite(v)) {
        throw InvalidParameter("malformed number: '" + whole + "'");
    }
    return v;
}

std::string fmt(double v, const char* spec = "%.12g") {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    if (text.empty()) throw InvalidParameter("empty complex number");
    if (text.back() != 'i') return {parse_real(text, text), 0.0};

    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

std::string format_complex(Complex z) {
    const double re = z.real(), im = z.imag();
    if (im == 0.0) return fmt(re);
    std::string imag = fmt(im) + "i";
    if (re == 0.0) return imag;
    if (imag.front() != '-') imag = "+" + imag;
    return fmt(re) + imag;
}

void write_boundary_csv(std::ostream& os, std::span<const BoundarySample> samples) {
    os << "theta,support,re,im,multiplicity\n";
    for (const auto& s : samples) {
        os << fmt(s.theta) << ',' << fmt(s.support) << ',' << fmt(s.point.real()) << ','
           << fmt(s.point.imag()) << ',' << s.multiplicity << '\n';
    }
}

std::vector<BoundarySample> read_boundary_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "theta,support,re,im,multiplicity") {
        throw InvalidParameter("missing boundary CSV header");
    }
    std::vector<BoundarySample> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 5) throw InvalidParameter("bad boundary CSV row: " + line);
        const double mult = parse_real(fields[4], line);
        if (mult < 0.0 || mult != std::floor(mult)) {
            throw InvalidParameter("bad multiplicity: " + line);
        }
        out.push_back({parse_real(fields[0], line), parse_real(fields[1], line),
                       {parse_real(fields[2], line), parse_real(fields[3], line)},
                       static_cast<std::size_t>(mult)});
    }
    return out;
}

void write_boundary_svg(std::ostream& os, std::span<const BoundarySample> samples) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    for (const auto& s : samples) {
        xmin = std::min(xmin, s.point.real());
        xmax = std::max(xmax, s.point.real());
        ymin = std::min(ymin, -s.point.imag());
        ymax = std::max(ymax, -s.point.imag());
    }
    double span = std::max(xmax - xmin, ymax - ymin);
    if (span == 0.0) span = 1.0;
    const double pad = 0.1 * span;
    xmin -= pad;
    ymin -= pad;
    const double w = xmax + pad - xmin;
    const double h = ymax + pad - ymin;
    const double stroke = 0.004 * span;

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\""
       << fmt(480.0 * h / w, "%.0f") << "\" viewBox=\"" << fmt(xmin, "%.6f") << ' '
       << fmt(ymin, "%.6f") << ' ' << fmt(w, "%.6f") << ' ' << fmt(h, "%.6f") << "\">\n";
    os << "  <g stroke=\"#999999\" stroke-width=\"" << fmt(0.5 * stroke, "%.6f") << "\">\n";
    os << "    <line x1=\"" << fmt(xmin, "%.6f") << "\" y1=\"0\" x2=\"" << fmt(xmin + w, "%.6f")
       << "\" y2=\"0\"/>\n";
    os << "    <line x1=\"0\" y1=\"" << fmt(ymin, "%.6f") << "\" x2=\"0\" y2=\""
       << fmt(ymin + h, "%.6f") << "\"/>\n";
    os << "  </g>\n";
    os << "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" << fmt(stroke, "%.6f")
       << "\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t k = 0; k <= samples.size() && !samples.empty(); ++k) {
        const auto& p = samples[k % samples.size()].point;
        if (k > 0) os << ' ';
        os << fmt(p.real(), "%.6f") << ',' << fmt(-p.imag(), "%.6f");
    }
    os << "\"/>\n</svg>\n";
}

void write_kipp_json(std::ostream& os, const HomogeneousPoly3& p, const FactorProbeReport& probe) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["degree"] = p.degree();
    ordered_json coeffs = ordered_json::array();
    for (std::size_t d = 0; d <= p.degree(); ++d) {
        for (std::size_t j = d + 1; j-- > 0;) {
            coeffs.push_back({{"x", j}, {"y", d - j}, {"z", p.degree() - d}, {"value", p.coeff(j, d - j)}});
        }
    }
    doc["coefficients"] = std::move(coeffs);

    ordered_json fp;
    fp["factor_tol"] = probe.factor_tol;
    fp["summary"] = probe.summary();
    fp["linear_candidates"] = probe.linear_candidates;
    fp["quadratic_candidates"] = probe.quadratic_candidates;
    fp["best_linear_remainder"] = probe.best_linear_remainder;
    fp["best_quadratic_remainder"] = probe.best_quadratic_remainder;
    ordered_json lin = ordered_json::array();
    for (const auto& f : probe.linear) {
        lin.push_back({{"c", f.c}, {"d", f.d}, {"remainder_norm", f.remainder_norm}});
    }
    fp["linear"] = std::move(lin);
    ordered_json quad = ordered_json::array();
    for (const auto& f : probe.quadratic) {
        ordered_json form = ordered_json::array();
        for (std::size_t d = 0; d <= 2; ++d) {
            for (std::size_t j = d + 1; j-- > 0;) {
                form.push_back({{"x", j}, {"y", d - j}, {"z", 2 - d}, {"value", f.form.coeff(j, d - j)}});
            }
        }
        quad.push_back({{"form", std::move(form)}, {"remainder_norm", f.remainder_norm}});
    }
    fp["quadratic"] = std::move(quad);
    doc["factor_probe"] = std::move(fp);
    os << doc.dump(2) << '\n';
}

}  // namespace kmsnr
