#include "hbops/bodies.hpp"
#include "hbops/cli_io.hpp"
#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"
#include "hbops/operators.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace hbops;

// Rationals cross the boundary as canonical "p/q" strings; the Python
// package turns them into fractions.Fraction.
namespace {

using StrVec = std::vector<std::string>;
using StrMat = std::vector<StrVec>;

RationalVector vec_in(const StrVec& v) {
    RationalVector out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

std::vector<RationalVector> rows_in(const StrMat& m) {
    std::vector<RationalVector> out;
    for (const auto& r : m) out.push_back(vec_in(r));
    return out;
}

StrVec vec_out(const RationalVector& v) {
    StrVec out;
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

StrMat rows_out(const std::vector<RationalVector>& rows) {
    StrMat out;
    for (const auto& r : rows) out.push_back(vec_out(r));
    return out;
}

RationalMatrix matrix_in(const StrMat& m) {
    if (m.empty()) throw ValidationError("matrix has no rows");
    return RationalMatrix::from_rows(rows_in(m), m.front().size());
}

py::tuple norm_out(const NormValue& n) {
    return py::make_tuple(n.exact ? py::cast(to_string(*n.exact)) : py::none(), n.approx);
}

std::optional<std::string> opt_out(const std::optional<Rational>& r) {
    if (!r) return std::nullopt;
    return to_string(*r);
}

} // namespace

PYBIND11_MODULE(_hbops, m) {
    m.doc() = "Exact norms, extensions and Hahn-Banach checks for finite-dimensional operators.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

    py::class_<SpaceHandle>(m, "Space")
        .def_static("l1", &SpaceHandle::l1)
        .def_static("l2", &SpaceHandle::l2)
        .def_static("linf", &SpaceHandle::linf)
        .def_static("pball", [](std::size_t dim, const std::string& p) { return SpaceHandle::pball(dim, Exponent::parse(p)); })
        .def_static("polytope_v", [](const StrMat& v) { return SpaceHandle::polytope_v(rows_in(v)); })
        .def_static("polytope_h", [](const StrMat& h) { return SpaceHandle::polytope_h(rows_in(h)); })
        .def_static("sum_inf", &SpaceHandle::sum_inf)
        .def_static("sum_one", &SpaceHandle::sum_one)
        .def_static("intersect", &SpaceHandle::intersect)
        .def_static("scale", [](const std::string& f, const SpaceHandle& s) { return SpaceHandle::scale(parse_rational(f), s); })
        .def_static("from_json", [](const std::string& text) { return io::space_from_json(io::Json::parse(text)); })
        .def("to_json", [](const SpaceHandle& s) { return io::space_to_json(s).dump(); })
        .def_property_readonly("dim", &SpaceHandle::dim)
        .def_property_readonly("is_polytopal", &SpaceHandle::is_polytopal)
        .def("polar", &SpaceHandle::polar)
        .def("vertices", [](const SpaceHandle& s) { return rows_out(s.materialize().vertices); })
        .def("normals", [](const SpaceHandle& s) { return rows_out(s.materialize().normals); })
        .def("__repr__", &SpaceHandle::describe);

    py::class_<LinOperator>(m, "Operator")
        .def(py::init([](const StrMat& a, const SpaceHandle& x, const SpaceHandle& y) { return LinOperator(matrix_in(a), x, y); }))
        .def_static("from_json", [](const std::string& text) { return io::operator_from_json(io::Json::parse(text)); })
        .def("to_json", [](const LinOperator& t) { return io::operator_to_json(t).dump(); })
        .def_property_readonly("matrix", [](const LinOperator& t) { return rows_out(t.matrix().row_list()); })
        .def_property_readonly("domain", &LinOperator::domain)
        .def_property_readonly("codomain", &LinOperator::codomain)
        .def_property_readonly("rank", &LinOperator::rank)
        .def("apply", [](const LinOperator& t, const StrVec& x) { return vec_out(t.apply(vec_in(x))); });

    m.def("norm", [](const SpaceHandle& s, const StrVec& v) { return norm_out(norm(s, vec_in(v))); });
    m.def("dual_norm", [](const SpaceHandle& s, const StrVec& h) { return norm_out(dual_norm(s, vec_in(h))); });
    m.def("compute_f", [](const SpaceHandle& s) { return compute_f(s).value; });
    m.def("compute_d", [](const SpaceHandle& s, const StrVec& x) { return compute_d(s, vec_in(x)); });
    m.def("face_dim", [](const SpaceHandle& s, const StrVec& h) { return face_dim(s, vec_in(h)); });

    m.def("op_norm", [](const LinOperator& t) { return norm_out(op_norm(t).value); });
    m.def("adjoint", &adjoint);
    m.def("scale", [](const LinOperator& t, const std::string& alpha) { return scale(t, parse_rational(alpha)); });

    m.def("min_extension_norm", [](const LinOperator& t) { return to_string(min_extension_norm(t)); });
    m.def("corollary_max_rank", &corollary_max_rank);

    m.def(
        "is_hahn_banach",
        [](const LinOperator& t, std::size_t net_size) {
            const HBVerdict v = is_hahn_banach(t, nullptr, net_size);
            py::dict d;
            d["kind"] = to_string(v.kind);
            d["op_norm"] = norm_out(v.op_norm);
            d["min_extension_norm"] = opt_out(v.min_extension_norm);
            d["gap"] = opt_out(v.gap);
            d["bound"] = v.bound;
            d["method"] = v.method;
            return d;
        },
        py::arg("op"), py::arg("net_size") = 32);

    m.def("hb_lower_bound", &hb_lower_bound);

    m.def("construct_rank_k", [](const SpaceHandle& x, const SpaceHandle& y, std::size_t k) {
        const Construction c = construct_rank_k(x, y, k);
        return py::make_tuple(c.op, io::certificate_to_json(c.certificate).dump());
    });

    m.def("verify_certificate", [](const std::string& text) {
        const CertificateCheck c = verify_certificate(io::certificate_from_json(io::Json::parse(text)));
        return py::make_tuple(c.valid, c.diagnostics);
    });
}
