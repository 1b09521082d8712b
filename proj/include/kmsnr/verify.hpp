#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kmsnr/matrix.hpp"

namespace kmsnr {

enum class Status { pass, fail, skip };

const char* to_string(Status s);

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct CheckResult {
    std::string id;
    std::vector<std::pair<std::string, ParamValue>> params;  // in generation order
    Status status = Status::skip;
    std::map<std::string, double> measured;
    double tolerance = 0.0;
    double elapsed_s = 0.0;
    std::string note;
};

struct SuiteConfig {
    std::vector<std::size_t> n_values;
    std::vector<Complex> a_values;
    std::size_t grid_m = 180;
    std::uint64_t seed = 0;
    std::size_t n_max = 12;
    std::vector<std::string> suites;  // empty means every check
    bool record_timing = false;
};

/// n = 2..9, a in {0.3, 0.5, 0.9, 1, 1.2, 2, 1+i}.
SuiteConfig default_config();

/// Check ids known to run_suite, sorted.
std::vector<std::string> check_ids();

/// Touch set of W(J_n(a)) and W(J_n(a)[j]): the singleton {min sigma(Re J_n(a))}
/// when n is odd, j = (n+1)/2 and |a| > 1, empty otherwise. The singleton case
/// also checks the antisymmetric eigenvector (x_j = 0, x_{j-k} = -x_{j+k}).
CheckResult check_boundary_intersection(std::size_t n, Complex a, std::size_t j, std::size_t m);

/// min sigma(Re(J_{2m-1}(a)[m])) equals min sigma(Re J_{2m-1}(a)) and is strictly
/// below min sigma(Re(J_{2m-1}(a)[2m-1])). Skips unless |a| > 1, m >= 2.
CheckResult check_middle_deletion_minimum(std::size_t m, Complex a);

/// Segment present iff n >= 3 and |a| = 1 (at Re z = -1/2); disc iff n = 2, a != 0.
CheckResult check_segment_and_disc(std::size_t n, Complex a, std::size_t m);

/// The explicit 3x3 S_3^{-1} matrix: no boundary touches with any A[j],
/// rank(I - A^*A) = 1 and every eigenvalue outside the closed unit disc.
CheckResult check_s3_inverse_example(std::size_t m);

/// Results ordered by id, then by generation order (n ascending, a in config
/// order, then j). Checks with n above n_max are emitted as skips. Throws
/// InvalidParameter for unknown suite ids.
std::vector<CheckResult> run_suite(const SuiteConfig& cfg);

/// {"suite_version", "config", "results": [{"id", "params", "status",
/// "measured", "tolerance", "elapsed_s"}]}, two-space indented.
std::string report_json(const SuiteConfig& cfg, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace kmsnr
