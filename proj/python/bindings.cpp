#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gblab/circle.hpp"
#include "gblab/errors.hpp"
#include "gblab/goldbach.hpp"
#include "gblab/primes.hpp"
#include "gblab/series.hpp"

namespace py = pybind11;
using namespace gblab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Goldbach circle-method laboratory";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<CacheError>(m, "CacheError", PyExc_IOError);
    py::register_exception<ArcOverlapError>(m, "ArcOverlapError", PyExc_RuntimeError);

    py::class_<PrimeSieve>(m, "PrimeSieve")
        .def(py::init([](std::uint64_t limit, unsigned workers) { return PrimeSieve::build(limit, workers); }),
             py::arg("limit"), py::arg("workers") = 1)
        .def_property_readonly("limit", &PrimeSieve::limit)
        .def("primes", [](const PrimeSieve& s) { return std::vector<std::uint64_t>(s.primes().begin(), s.primes().end()); })
        .def("is_prime", &PrimeSieve::is_prime)
        .def("prime_count", &PrimeSieve::prime_count, py::arg("x"))
        .def("prime_count_ap", &PrimeSieve::prime_count_ap, py::arg("n"), py::arg("q"), py::arg("l"))
        .def("factorize",
             [](const PrimeSieve& s, std::uint64_t n) {
                 std::vector<std::pair<std::uint64_t, unsigned>> out;
                 for (const auto& pp : s.factorize(n).factors) out.emplace_back(pp.prime, pp.exponent);
                 return out;
             })
        .def("mobius", [](const PrimeSieve& s, std::uint64_t n) { return mobius(s.factorize(n)); })
        .def("euler_phi", [](const PrimeSieve& s, std::uint64_t n) { return euler_phi(s.factorize(n)); })
        .def("save", [](const PrimeSieve& s, const std::filesystem::path& p) { write_sieve_cache(s, p); })
        .def_static("load", &read_sieve_cache);

    m.def("log_integral", &log_integral, py::arg("x"), py::arg("tol") = 1e-9);

    py::class_<GoldbachCount>(m, "GoldbachCount")
        .def_readonly("n", &GoldbachCount::n)
        .def_readonly("ordered", &GoldbachCount::ordered)
        .def_readonly("unordered", &GoldbachCount::unordered)
        .def("__repr__", [](const GoldbachCount& c) {
            return "GoldbachCount(n=" + std::to_string(c.n) + ", ordered=" + std::to_string(c.ordered) +
                   ", unordered=" + std::to_string(c.unordered) + ")";
        });
    m.def("count_one", &count_one, py::arg("sieve"), py::arg("n"));
    m.def(
        "count_range",
        [](const PrimeSieve& s, std::uint64_t n_max, std::uint64_t threshold, unsigned workers) {
            CountRangeOptions o;
            o.transform_threshold = threshold;
            o.workers = workers;
            return count_range(s, n_max, o);
        },
        py::arg("sieve"), py::arg("n_max"), py::arg("transform_threshold") = CountRangeOptions{}.transform_threshold,
        py::arg("workers") = 1);
    m.def("parity_sum", &parity_sum);

    py::enum_<CoefficientMode>(m, "CoefficientMode")
        .value("MU_AS_WRITTEN", CoefficientMode::MuAsWritten)
        .value("MU_SQUARED", CoefficientMode::MuSquared);
    py::enum_<SeriesTag>(m, "SeriesTag")
        .value("PAPER_CLOSED", SeriesTag::PaperClosed)
        .value("PAPER_DIVISOR", SeriesTag::PaperDivisor)
        .value("SUM_OVER_Q", SeriesTag::SumOverQ)
        .value("PRODUCT_OVER_P", SeriesTag::ProductOverP)
        .value("HARDY_LITTLEWOOD", SeriesTag::HardyLittlewood);
    py::class_<SingularSeriesValue>(m, "SingularSeriesValue")
        .def_readonly("n", &SingularSeriesValue::n)
        .def_property_readonly("variant", [](const SingularSeriesValue& v) { return v.variant.label(); })
        .def_readonly("value", &SingularSeriesValue::value)
        .def_readonly("truncation", &SingularSeriesValue::truncation)
        .def_readonly("tail_note", &SingularSeriesValue::tail_note);

    m.def("ramanujan_sum", &ramanujan_sum, py::arg("sieve"), py::arg("q"), py::arg("n"));
    m.def("g_of_q", py::overload_cast<const PrimeSieve&, std::uint64_t, std::int64_t, CoefficientMode>(&g_of_q),
          py::arg("sieve"), py::arg("q"), py::arg("n"), py::arg("mode"));
    m.def(
        "singular_series",
        [](const PrimeSieve& s, std::uint64_t n, SeriesTag tag, CoefficientMode mode, std::uint64_t p, std::uint64_t q) {
            return evaluate_series(s, n, SeriesVariant{tag, mode}, p, q);
        },
        py::arg("sieve"), py::arg("n"), py::arg("tag"), py::arg("mode") = CoefficientMode::MuSquared,
        py::arg("trunc_p") = kDefaultTruncation, py::arg("trunc_q") = kDefaultTruncation);
    m.def("twin_prime_constant", &twin_prime_constant, py::arg("sieve"), py::arg("max_p"));

    py::class_<ArcParams>(m, "ArcParams")
        .def(py::init(&make_arc_params), py::arg("n"), py::arg("c") = 7.0)
        .def_readonly("n", &ArcParams::n)
        .def_readonly("r", &ArcParams::r)
        .def_readonly("c", &ArcParams::c)
        .def_readonly("tau", &ArcParams::tau)
        .def_readonly("q_major_bound", &ArcParams::q_major_bound);
    m.def("dissect_arcs", [](const ArcParams& p) {
        const auto d = dissect_arcs(p);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> arcs;
        for (const auto& a : d.major) arcs.emplace_back(a.a, a.q);
        return py::make_tuple(arcs, d.major_measure);
    });
    m.def("major_arc_measure", &major_arc_measure);

    m.def("exp_sum_primes", [](const PrimeSieve& s, std::uint64_t n, double alpha) {
        return exp_sum_primes(s, n, alpha).value;
    });
    m.def("integral_I", &integral_I, py::arg("n"), py::arg("z"));
    m.def("integral_J", &integral_J, py::arg("n"), py::arg("z"), py::arg("tol") = 1e-8);
    m.def("integral_R", &integral_R, py::arg("n"), py::arg("c") = 2.0, py::arg("tol") = 1e-6,
          py::arg("workers") = 1);
    m.def("bound_Z", &bound_Z);
    m.def("rep_count_via_orthogonality", &rep_count_via_orthogonality, py::arg("sieve"), py::arg("n"), py::arg("m"),
          py::arg("workers") = 1);
    m.def("lemma4_probe", &lemma4_probe, py::arg("sieve"), py::arg("n"), py::arg("grid"), py::arg("workers") = 1);
    m.def("minor_bound", &minor_bound, py::arg("params"), py::arg("q"), py::arg("delta"), py::arg("eps") = 0.0);
}
