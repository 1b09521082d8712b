#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmsnr/errors.hpp"
#include "kmsnr/io.hpp"
#include "kmsnr/kippenhahn.hpp"
#include "kmsnr/linalg.hpp"
#include "kmsnr/models.hpp"
#include "kmsnr/numrange.hpp"
#include "kmsnr/verify.hpp"

namespace py = pybind11;
using namespace kmsnr;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix from_numpy(const CArray& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) {
        throw InvalidParameter("expected a square 2-d array");
    }
    const auto n = static_cast<std::size_t>(arr.shape(0));
    ComplexMatrix m(n);
    auto r = arr.unchecked<2>();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = r(i, j);
    if (!m.is_finite()) throw InvalidParameter("matrix entries must be finite");
    return m;
}

CArray to_numpy(const ComplexMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.n());
    CArray out({n, n});
    auto w = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i)
        for (py::ssize_t j = 0; j < n; ++j) w(i, j) = m(i, j);
    return out;
}

py::dict samples_dict(const std::vector<BoundarySample>& s) {
    std::vector<double> theta, support;
    std::vector<Complex> point;
    std::vector<std::size_t> mult;
    for (const auto& b : s) {
        theta.push_back(b.theta);
        support.push_back(b.support);
        point.push_back(b.point);
        mult.push_back(b.multiplicity);
    }
    py::dict d;
    d["theta"] = py::array(py::cast(theta));
    d["support"] = py::array(py::cast(support));
    d["point"] = py::array(py::cast(point));
    d["multiplicity"] = py::array(py::cast(mult));
    return d;
}

py::dict poly_dict(const HomogeneousPoly3& p) {
    py::dict d;
    for (std::size_t deg = 0; deg <= p.degree(); ++deg)
        for (std::size_t j = 0; j <= deg; ++j)
            d[py::make_tuple(j, deg - j, p.degree() - deg)] = p.coeff(j, deg - j);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "KMS matrices, numerical ranges and Kippenhahn polynomials";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", PyExc_IndexError);
    py::register_exception<NotContained>(m, "NotContained", PyExc_RuntimeError);

    m.def("kms", [](std::size_t n, Complex a) { return to_numpy(kms(n, a)); }, py::arg("n"), py::arg("a"));
    m.def("jordan", [](std::size_t n) { return to_numpy(jordan(n)); }, py::arg("n"));
    m.def("principal_submatrix",
          [](const CArray& a, std::size_t j) { return to_numpy(principal_submatrix(from_numpy(a), j)); },
          py::arg("a"), py::arg("j"));
    m.def("affine_class_map", [](std::size_t n, Complex a) { return to_numpy(affine_class_map({n, a})); },
          py::arg("n"), py::arg("a"));
    m.def("snm1_standard", [](std::size_t n, Complex lam) { return to_numpy(snm1_standard(n, lam)); },
          py::arg("n"), py::arg("lam"));
    m.def("sine_roots", [](std::size_t n, double a) { return sine_roots(n, a).roots; }, py::arg("n"),
          py::arg("a"));

    m.def("hermitian_eigs", [](const CArray& h) {
        const auto e = hermitian_eigs(from_numpy(h));
        return py::make_tuple(py::array(py::cast(e.values)), to_numpy(e.vectors));
    }, py::arg("h"));
    m.def("det", [](const CArray& a) { return det(from_numpy(a)); }, py::arg("a"));
    m.def("krylov_rank", [](const CArray& a, const std::vector<Complex>& x) {
        return krylov_rank(from_numpy(a), x);
    }, py::arg("a"), py::arg("x"));

    m.def("support", [](const CArray& a, double t) { return support(from_numpy(a), t); }, py::arg("a"),
          py::arg("theta"));
    m.def("boundary_sample", [](const CArray& a, std::size_t samples) {
        return samples_dict(boundary_sample(from_numpy(a), samples));
    }, py::arg("a"), py::arg("samples") = kDefaultSamples);
    m.def("numerical_radius", [](const CArray& a) { return numerical_radius(from_numpy(a)); }, py::arg("a"));
    m.def("interior_gap", [](const CArray& inner, const CArray& outer, std::size_t samples) {
        return interior_gap(from_numpy(inner), from_numpy(outer), samples);
    }, py::arg("inner"), py::arg("outer"), py::arg("samples") = 360);
    m.def("detect_segment", [](const CArray& a, std::size_t samples) {
        const auto s = detect_segment(from_numpy(a), samples);
        py::dict d;
        d["present"] = s.present;
        d["abscissa"] = s.abscissa;
        d["endpoints"] = py::make_tuple(s.endpoints[0], s.endpoints[1]);
        d["direction_theta"] = s.direction_theta;
        return d;
    }, py::arg("a"), py::arg("samples") = kDefaultSamples);
    m.def("disc_check", [](const CArray& a, std::size_t samples) {
        const auto r = disc_check(from_numpy(a), samples);
        py::dict d;
        d["is_disc"] = r.is_disc;
        d["center"] = r.center;
        d["radius"] = r.radius;
        return d;
    }, py::arg("a"), py::arg("samples") = kDefaultSamples);
    m.def("circle_touch_points", [](const CArray& a, std::size_t samples) {
        return circle_touch_points(from_numpy(a), samples);
    }, py::arg("a"), py::arg("samples") = kDefaultSamples);
    m.def("boundary_touch", [](const CArray& a, const CArray& b, std::size_t samples) {
        return boundary_touch(from_numpy(a), from_numpy(b), samples);
    }, py::arg("a"), py::arg("b"), py::arg("samples") = kDefaultSamples);
    m.def("boundary_span_rank", [](const CArray& a, std::size_t samples) {
        return boundary_span_rank(from_numpy(a), samples);
    }, py::arg("a"), py::arg("samples") = 180);

    m.def("kipp_coeffs", [](const CArray& a) { return poly_dict(kipp_coeffs(from_numpy(a))); }, py::arg("a"),
          "Coefficients keyed by the exponent triple (x, y, z).");
    m.def("factor_probe", [](const CArray& a, std::size_t samples) {
        const auto A = from_numpy(a);
        const auto r = factor_probe(kipp_coeffs(A), boundary_sample(A, samples));
        py::dict d;
        d["summary"] = r.summary();
        d["linear"] = r.linear.size();
        d["quadratic"] = r.quadratic.size();
        d["best_linear_remainder"] = r.best_linear_remainder;
        d["best_quadratic_remainder"] = r.best_quadratic_remainder;
        return d;
    }, py::arg("a"), py::arg("samples") = kDefaultSamples);

    m.def("check_ids", &check_ids);
    m.def("run_suite", [](std::vector<std::size_t> n_values, std::vector<Complex> a_values, std::size_t grid_m,
                          std::uint64_t seed, std::size_t n_max, std::vector<std::string> suites) {
        SuiteConfig cfg;
        cfg.n_values = std::move(n_values);
        cfg.a_values = std::move(a_values);
        cfg.grid_m = grid_m;
        cfg.seed = seed;
        cfg.n_max = n_max;
        cfg.suites = std::move(suites);
        std::string doc;
        {
            py::gil_scoped_release release;
            doc = report_json(cfg, run_suite(cfg));
        }
        return doc;
    }, py::arg("n_values"), py::arg("a_values"), py::arg("grid_m") = 180, py::arg("seed") = 0,
       py::arg("n_max") = 12, py::arg("suites") = std::vector<std::string>{},
       "Runs the check suite and returns the JSON report.");
}
