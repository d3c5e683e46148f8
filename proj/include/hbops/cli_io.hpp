#pragma once

// File formats, reports, 2-D rendering and the command-line surface.
//
// Every rational in a document is a string "p/q" ("p" when q = 1), so exact
// values survive a round trip bit for bit.

#include "hbops/bodies.hpp"
#include "hbops/hahn_banach.hpp"
#include "hbops/operators.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hbops::io {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const RationalVector& v);
Json to_json(const RationalMatrix& m);
Rational rational_from_json(const Json& j);
RationalVector vector_from_json(const Json& j);
RationalMatrix matrix_from_json(const Json& j);

Json space_to_json(const SpaceHandle& s);
Json operator_to_json(const LinOperator& t);
Json certificate_to_json(const ExtensionCertificate& c);
Json verdict_to_json(const HBVerdict& v);

// Schema problems raise ParseError, broken invariants ValidationError.
// String references to bodies ("domain": "x.json") resolve against `base`.
SpaceHandle space_from_json(const Json& j, const std::filesystem::path& base = {});
LinOperator operator_from_json(const Json& j, const std::filesystem::path& base = {});
ExtensionCertificate certificate_from_json(const Json& j, const std::filesystem::path& base = {});

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
SpaceHandle load_space(const std::filesystem::path& path);
LinOperator load_operator(const std::filesystem::path& path);
ExtensionCertificate load_certificate(const std::filesystem::path& path);

struct PointRecord {
    RationalVector point;
    std::optional<std::size_t> d; // empty when undecidable at this point
    std::string note;

    bool operator==(const PointRecord&) const = default;
};

struct VerdictRecord {
    std::string name;    // delegate operation
    std::string outcome; // e.g. "NotHB", "valid", "pass"
    Json data;           // leaves are strings, integers or booleans

    bool operator==(const VerdictRecord&) const = default;
};

struct AnalysisReport {
    std::string identity;
    std::size_t dim = 0;
    std::optional<std::size_t> vertex_count;
    std::optional<std::size_t> facet_count;
    std::optional<std::size_t> f;
    std::optional<RationalVector> witness_center;
    std::optional<RationalVector> witness_functional;
    std::size_t witness_directions = 0;
    std::vector<PointRecord> points;
    std::vector<VerdictRecord> verdicts;
    double seconds = 0;

    bool operator==(const AnalysisReport&) const = default;
};

Json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const Json& j);

/// Text rendering of a JSON report: one "key: value" line per leaf, so text
/// and JSON modes always carry the same values.
std::string to_text(const Json& j);

/// Dimension, counts, f with its witness and d at the vertices (polytopal)
/// or at exactly normalizable coordinate vectors.
AnalysisReport analyze_space(const SpaceHandle& s, const std::string& identity);

/// SVG of a planar unit ball; DomainError unless dim = 2. Polytopes are drawn
/// exactly, other bodies as 256-gons through boundary points.
std::string render2d_svg(const SpaceHandle& s);

/// The hbops command line. Returns the process exit code: 0 success or
/// verdict true, 1 verdict false, 2 usage, parse or validation error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hbops::io
