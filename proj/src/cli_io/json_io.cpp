#include "hbops/cli_io.hpp"
#include "hbops/error.hpp"

#include <fstream>
#include <sstream>

namespace hbops::io {
namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::vector<SpaceHandle> parts_from_json(const Json& j, const std::filesystem::path& base) {
    if (!j.is_array() || j.empty()) throw ParseError("'parts' must be a nonempty array");
    std::vector<SpaceHandle> out;
    for (const auto& p : j) out.push_back(space_from_json(p, base));
    return out;
}

std::vector<RationalVector> rows_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("'") + what + "' must be an array of vectors");
    std::vector<RationalVector> out;
    for (const auto& v : j) out.push_back(vector_from_json(v));
    return out;
}

Json rows_to_json(const std::vector<RationalVector>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    return a;
}

Json norm_to_json(const NormValue& v) {
    if (v.exact) return to_json(*v.exact);
    return v.approx;
}

} // namespace

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const RationalMatrix& m) { return rows_to_json(m.row_list()); }

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("rationals must be strings \"p/q\", got " + j.dump());
    return parse_rational(j.get<std::string>());
}

RationalVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
    RationalVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

RationalMatrix matrix_from_json(const Json& j) {
    auto rows = rows_from_json(j, "matrix");
    if (rows.empty()) throw ParseError("matrix has no rows");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw ParseError("matrix rows have different lengths");
    return RationalMatrix::from_rows(rows, rows[0].size());
}

Json space_to_json(const SpaceHandle& s) {
    switch (s.kind()) {
    case BodyKind::PolytopeV: return {{"kind", "polytopeV"}, {"vertices", rows_to_json(s.data())}};
    case BodyKind::PolytopeH: return {{"kind", "polytopeH"}, {"normals", rows_to_json(s.data())}};
    case BodyKind::PBall: return {{"kind", "pball"}, {"dim", s.dim()}, {"p", s.exponent().to_string()}};
    case BodyKind::Scale: return {{"kind", "scale"}, {"factor", to_json(s.factor())}, {"inner", space_to_json(s.inner())}};
    case BodyKind::SumInf:
    case BodyKind::SumOne:
    case BodyKind::Intersect: {
        Json parts = Json::array();
        for (const auto& p : s.parts()) parts.push_back(space_to_json(p));
        const char* kind = s.kind() == BodyKind::SumInf ? "sum_inf" : s.kind() == BodyKind::SumOne ? "sum_one" : "intersect";
        return {{"kind", kind}, {"parts", parts}};
    }
    }
    throw InternalError("space_to_json: unknown body kind");
}

SpaceHandle space_from_json(const Json& j, const std::filesystem::path& base) {
    if (j.is_string()) return load_space(base / j.get<std::string>());
    const Json& kj = field(j, "kind");
    if (!kj.is_string()) throw ParseError("'kind' must be a string");
    const std::string kind = kj.get<std::string>();
    if (kind == "polytopeV") return SpaceHandle::polytope_v(rows_from_json(field(j, "vertices"), "vertices"));
    if (kind == "polytopeH") return SpaceHandle::polytope_h(rows_from_json(field(j, "normals"), "normals"));
    if (kind == "pball") {
        const Json& d = field(j, "dim");
        if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) throw ParseError("'dim' must be a positive integer");
        const Json& p = field(j, "p");
        if (!p.is_string()) throw ParseError("'p' must be a string");
        return SpaceHandle::pball(d.get<std::size_t>(), Exponent::parse(p.get<std::string>()));
    }
    if (kind == "sum_inf") return SpaceHandle::sum_inf(parts_from_json(field(j, "parts"), base));
    if (kind == "sum_one") return SpaceHandle::sum_one(parts_from_json(field(j, "parts"), base));
    if (kind == "intersect") return SpaceHandle::intersect(parts_from_json(field(j, "parts"), base));
    if (kind == "scale")
        return SpaceHandle::scale(rational_from_json(field(j, "factor")), space_from_json(field(j, "inner"), base));
    throw ParseError("unknown body kind '" + kind + "'");
}

Json operator_to_json(const LinOperator& t) {
    return {{"domain", space_to_json(t.domain())}, {"codomain", space_to_json(t.codomain())}, {"matrix", to_json(t.matrix())}};
}

LinOperator operator_from_json(const Json& j, const std::filesystem::path& base) {
    SpaceHandle x = space_from_json(field(j, "domain"), base);
    SpaceHandle y = space_from_json(field(j, "codomain"), base);
    return LinOperator(matrix_from_json(field(j, "matrix")), std::move(x), std::move(y));
}

Json certificate_to_json(const ExtensionCertificate& c) {
    Json atoms = Json::array();
    for (const auto& a : c.atoms) atoms.push_back({{"point", to_json(a.point)}, {"vector", to_json(a.vector)}});
    return {{"atoms", atoms}, {"operator", operator_to_json(c.op)}, {"rank", c.rank}};
}

ExtensionCertificate certificate_from_json(const Json& j, const std::filesystem::path& base) {
    const Json& atoms = field(j, "atoms");
    if (!atoms.is_array()) throw ParseError("'atoms' must be an array");
    std::vector<ExtensionCertificate::Atom> list;
    for (const auto& a : atoms) list.push_back({vector_from_json(field(a, "point")), vector_from_json(field(a, "vector"))});
    const Json& rank = field(j, "rank");
    if (!rank.is_number_unsigned()) throw ParseError("'rank' must be a nonnegative integer");
    return ExtensionCertificate{std::move(list), operator_from_json(field(j, "operator"), base), rank.get<std::size_t>()};
}

Json verdict_to_json(const HBVerdict& v) {
    Json j{{"verdict", to_string(v.kind)}, {"op_norm", norm_to_json(v.op_norm)}, {"method", v.method}};
    if (v.min_extension_norm) j["min_extension_norm"] = to_json(*v.min_extension_norm);
    if (v.gap) j["gap"] = to_json(*v.gap);
    if (v.extension) j["extension"] = to_json(*v.extension);
    if (v.embedding) j["embedding"] = rows_to_json(v.embedding->coordinates);
    if (v.kind == VerdictKind::LowerBoundOnly) {
        j["bound"] = v.bound;
        j["net_size"] = v.net_size;
    }
    return j;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

namespace {

// nlohmann type errors surface as ParseError naming the file.
template <class F>
auto with_file(const std::filesystem::path& path, F&& f) {
    try {
        return f(read_json(path), path.parent_path());
    } catch (const Json::exception& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
}

} // namespace

SpaceHandle load_space(const std::filesystem::path& path) {
    return with_file(path, [](const Json& j, const auto& base) { return space_from_json(j, base); });
}

LinOperator load_operator(const std::filesystem::path& path) {
    return with_file(path, [](const Json& j, const auto& base) { return operator_from_json(j, base); });
}

ExtensionCertificate load_certificate(const std::filesystem::path& path) {
    return with_file(path, [](const Json& j, const auto& base) { return certificate_from_json(j, base); });
}

} // namespace hbops::io
