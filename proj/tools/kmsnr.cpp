#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "kmsnr/errors.hpp"
#include "kmsnr/io.hpp"
#include "kmsnr/kippenhahn.hpp"
#include "kmsnr/models.hpp"
#include "kmsnr/numrange.hpp"
#include "kmsnr/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIoError = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MatrixFlags {
    std::size_t n = 0;
    std::string a = "0";
    std::size_t j = 0;
    std::size_t samples = kmsnr::kDefaultSamples;
    std::string out;
};

void add_matrix_flags(CLI::App* cmd, MatrixFlags& f, bool need_out, bool with_samples) {
    cmd->add_option("--n", f.n, "matrix size")->required();
    cmd->add_option("--a", f.a, "KMS parameter, e.g. 2, -0.5, 1.5+2i")->required();
    cmd->add_option("--j", f.j, "delete row and column j (1-based) before computing");
    if (with_samples) cmd->add_option("--samples", f.samples, "number of support directions")->capture_default_str();
    auto* out = cmd->add_option("--out", f.out, "output file");
    if (need_out) out->required();
}

kmsnr::ComplexMatrix build_matrix(const MatrixFlags& f) {
    if (f.n < 1) throw UsageError("--n must be at least 1");
    kmsnr::Complex a;
    try {
        a = kmsnr::parse_complex(f.a);
    } catch (const kmsnr::InvalidParameter& e) {
        throw UsageError(std::string("--a: ") + e.what());
    }
    const kmsnr::ComplexMatrix m = kmsnr::kms(f.n, a);
    if (f.j == 0) return m;
    if (f.n < 2 || f.j > f.n) throw UsageError("--j must lie in 1..n and needs n >= 2");
    return kmsnr::principal_submatrix(m, f.j);
}

void check_samples(std::size_t s) {
    if (s < 3) throw UsageError("--samples must be at least 3");
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ostringstream buf;
    body(buf);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os << buf.str();
    os.flush();
    if (!os) throw IoError("write to " + path + " failed");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KMS matrices, numerical ranges and Kippenhahn polynomials"};
    app.require_subcommand(1);

    MatrixFlags bflags, pflags, kflags, rflags;
    auto* boundary = app.add_subcommand("boundary", "sample the boundary of W(A) to CSV");
    add_matrix_flags(boundary, bflags, true, true);
    auto* plot = app.add_subcommand("plot", "draw the boundary of W(A) as SVG");
    add_matrix_flags(plot, pflags, true, true);
    auto* kipp = app.add_subcommand("kipp", "Kippenhahn polynomial coefficients and factor probe to JSON");
    add_matrix_flags(kipp, kflags, true, true);
    auto* radius = app.add_subcommand("radius", "numerical radius");
    add_matrix_flags(radius, rflags, false, false);

    std::vector<std::size_t> v_n;
    std::vector<std::string> v_a;
    std::string v_suite = "all";
    std::uint64_t v_seed = 0;
    std::size_t v_nmax = 12;
    std::size_t v_grid = 180;
    bool v_timing = false;
    std::string v_out;
    auto* verify = app.add_subcommand("verify", "run the check suite");
    verify->add_option("--n", v_n, "matrix sizes (default 2..9)");
    verify->add_option("--a", v_a, "parameters (default 0.3 0.5 0.9 1 1.2 2 1+1i)");
    verify->add_option("--suite", v_suite, "comma-separated check ids, or all")->capture_default_str();
    verify->add_option("--seed", v_seed, "seed for random isometries")->capture_default_str();
    verify->add_option("--n-max", v_nmax, "skip checks with larger n")->capture_default_str();
    verify->add_option("--grid", v_grid, "support directions per check")->capture_default_str();
    verify->add_flag("--timing", v_timing, "record elapsed_s per check");
    verify->add_option("--out", v_out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (boundary->parsed()) {
            check_samples(bflags.samples);
            const auto samples = kmsnr::boundary_sample(build_matrix(bflags), bflags.samples);
            write_file(bflags.out, [&](std::ostream& os) { kmsnr::write_boundary_csv(os, samples); });
            std::printf("wrote %zu boundary samples to %s\n", samples.size(), bflags.out.c_str());
        } else if (plot->parsed()) {
            check_samples(pflags.samples);
            const auto samples = kmsnr::boundary_sample(build_matrix(pflags), pflags.samples);
            write_file(pflags.out, [&](std::ostream& os) { kmsnr::write_boundary_svg(os, samples); });
            std::printf("wrote %zu-point boundary plot to %s\n", samples.size(), pflags.out.c_str());
        } else if (kipp->parsed()) {
            check_samples(kflags.samples);
            const auto a = build_matrix(kflags);
            if (a.n() > kmsnr::kKippMaxDimension) throw UsageError("kipp supports n <= 16");
            const auto poly = kmsnr::kipp_coeffs(a);
            const auto samples = kmsnr::boundary_sample(a, std::max<std::size_t>(kflags.samples, 6));
            const auto probe = kmsnr::factor_probe(poly, samples);
            write_file(kflags.out, [&](std::ostream& os) { kmsnr::write_kipp_json(os, poly, probe); });
            std::printf("degree %zu Kippenhahn polynomial written to %s; %s\n", poly.degree(),
                        kflags.out.c_str(), probe.summary().c_str());
        } else if (radius->parsed()) {
            const auto detail = kmsnr::numerical_radius_detail(build_matrix(rflags));
            std::printf("w(A) = %.15g\n", detail.value);
            if (!rflags.out.empty()) {
                write_file(rflags.out, [&](std::ostream& os) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.15g", detail.value);
                    os << "{\"numerical_radius\": " << buf << ", \"maximizers\": [";
                    for (std::size_t k = 0; k < detail.maximizers.size(); ++k) {
                        std::snprintf(buf, sizeof buf, "%.15g", detail.maximizers[k]);
                        os << (k ? ", " : "") << buf;
                    }
                    os << "]}\n";
                });
            }
        } else if (verify->parsed()) {
            kmsnr::SuiteConfig cfg = kmsnr::default_config();
            if (!v_n.empty()) cfg.n_values = v_n;
            if (!v_a.empty()) {
                cfg.a_values.clear();
                for (const auto& s : v_a) {
                    try {
                        cfg.a_values.push_back(kmsnr::parse_complex(s));
                    } catch (const kmsnr::InvalidParameter& e) {
                        throw UsageError(std::string("--a: ") + e.what());
                    }
                }
            }
            for (std::size_t n : cfg.n_values) {
                if (n < 1) throw UsageError("--n values must be at least 1");
            }
            if (v_grid < 3) throw UsageError("--grid must be at least 3");
            const auto ids = split_list(v_suite);
            cfg.suites = (ids.size() == 1 && ids.front() == "all") ? std::vector<std::string>{} : ids;
            cfg.seed = v_seed;
            cfg.n_max = v_nmax;
            cfg.grid_m = v_grid;
            cfg.record_timing = v_timing;

            std::vector<kmsnr::CheckResult> results;
            try {
                results = kmsnr::run_suite(cfg);
            } catch (const kmsnr::InvalidParameter& e) {
                throw UsageError(e.what());
            }
            std::size_t pass = 0, fail = 0, skip = 0;
            for (const auto& r : results) {
                if (r.status == kmsnr::Status::pass) ++pass;
                if (r.status == kmsnr::Status::fail) ++fail;
                if (r.status == kmsnr::Status::skip) ++skip;
            }
            for (const auto& r : results) {
                if (r.status != kmsnr::Status::fail) continue;
                std::printf("FAIL %s", r.id.c_str());
                for (const auto& [k, v] : r.params) {
                    std::visit([&](const auto& x) {
                        std::ostringstream s;
                        s << x;
                        std::printf(" %s=%s", k.c_str(), s.str().c_str());
                    }, v);
                }
                std::printf("\n");
            }
            if (!v_out.empty()) {
                const std::string doc = kmsnr::report_json(cfg, results);
                write_file(v_out, [&](std::ostream& os) { os << doc; });
            }
            std::printf("%zu checks: %zu pass, %zu fail, %zu skip\n", results.size(), pass, fail, skip);
            return fail == 0 ? kOk : kVerifyFailed;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoError;
    } catch (const kmsnr::InvalidParameter& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const kmsnr::IndexOutOfRange& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const kmsnr::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kVerifyFailed;
    }
    return kOk;
}
