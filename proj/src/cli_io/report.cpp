#include "hbops/cli_io.hpp"
#include "hbops/error.hpp"

#include <chrono>
#include <sstream>

namespace hbops::io {
namespace {

template <class T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

std::optional<std::size_t> size_or_null(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<std::size_t>();
}

std::optional<RationalVector> vector_or_null(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return vector_from_json(*it);
}

bool is_flat(const Json& j) {
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (x.is_object()) return false;
    return true;
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
    if (is_flat(j)) {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
        return;
    }
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
}

} // namespace

Json report_to_json(const AnalysisReport& r) {
    Json j{{"identity", r.identity}, {"dim", r.dim}, {"seconds", r.seconds}};
    put_optional(j, "vertex_count", r.vertex_count);
    put_optional(j, "facet_count", r.facet_count);
    put_optional(j, "f", r.f);
    if (r.witness_center) j["witness_center"] = to_json(*r.witness_center);
    if (r.witness_functional) j["witness_functional"] = to_json(*r.witness_functional);
    if (r.f) j["witness_directions"] = r.witness_directions;
    Json pts = Json::array();
    for (const auto& p : r.points) {
        Json e{{"point", to_json(p.point)}};
        if (p.d) e["d"] = *p.d;
        if (!p.note.empty()) e["note"] = p.note;
        pts.push_back(std::move(e));
    }
    if (!r.points.empty()) j["points"] = pts;
    Json vs = Json::array();
    for (const auto& v : r.verdicts) vs.push_back({{"name", v.name}, {"outcome", v.outcome}, {"data", v.data}});
    if (!r.verdicts.empty()) j["verdicts"] = vs;
    return j;
}

AnalysisReport report_from_json(const Json& j) {
    try {
        AnalysisReport r;
        r.identity = j.at("identity").get<std::string>();
        r.dim = j.at("dim").get<std::size_t>();
        r.seconds = j.at("seconds").get<double>();
        r.vertex_count = size_or_null(j, "vertex_count");
        r.facet_count = size_or_null(j, "facet_count");
        r.f = size_or_null(j, "f");
        r.witness_center = vector_or_null(j, "witness_center");
        r.witness_functional = vector_or_null(j, "witness_functional");
        r.witness_directions = size_or_null(j, "witness_directions").value_or(0);
        if (auto it = j.find("points"); it != j.end())
            for (const auto& p : *it) {
                PointRecord pr{vector_from_json(p.at("point")), size_or_null(p, "d"), p.value("note", "")};
                r.points.push_back(std::move(pr));
            }
        if (auto it = j.find("verdicts"); it != j.end())
            for (const auto& v : *it)
                r.verdicts.push_back({v.at("name").get<std::string>(), v.at("outcome").get<std::string>(), v.at("data")});
        return r;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed analysis report: ") + e.what());
    }
}

std::string to_text(const Json& j) {
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

AnalysisReport analyze_space(const SpaceHandle& s, const std::string& identity) {
    const auto start = std::chrono::steady_clock::now();
    AnalysisReport r;
    r.identity = identity;
    r.dim = s.dim();

    FResult f = compute_f(s);
    r.f = f.value;
    r.witness_center = f.witness.center;
    r.witness_functional = f.witness.face.functional;
    r.witness_directions = f.witness.directions.size();

    std::vector<RationalVector> probes;
    if (s.is_polytopal()) {
        const Polytope& p = s.materialize();
        r.vertex_count = p.vertices.size();
        r.facet_count = p.normals.size();
        probes = p.vertices;
    } else {
        for (std::size_t i = 0; i < s.dim(); ++i) {
            RationalVector e = unit_vector(s.dim(), i);
            NormValue nv = norm(s, e);
            if (nv.exact) probes.push_back(scaled(e, 1 / *nv.exact));
        }
    }
    for (auto& x : probes) {
        PointRecord pr{x, std::nullopt, ""};
        try {
            pr.d = compute_d(s, x);
        } catch (const UnsupportedError& e) {
            pr.note = e.what();
        }
        r.points.push_back(std::move(pr));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace hbops::io
