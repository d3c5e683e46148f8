#include "hbops/cli_io.hpp"
#include "hbops/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hbops::io {

std::string render2d_svg(const SpaceHandle& s) {
    if (s.dim() != 2) throw DomainError("render2d: only planar bodies can be drawn (dim = " + std::to_string(s.dim()) + ")");

    std::vector<std::pair<double, double>> boundary;
    if (s.is_polytopal()) {
        for (const auto& v : s.materialize().vertices) boundary.emplace_back(v[0].get_d(), v[1].get_d());
        std::sort(boundary.begin(), boundary.end(), [](const auto& a, const auto& b) {
            return std::atan2(a.second, a.first) < std::atan2(b.second, b.first);
        });
    } else {
        constexpr int kSegments = 256;
        for (int k = 0; k < kSegments; ++k) {
            const double t = 2 * std::numbers::pi * k / kSegments;
            const std::vector<double> u{std::cos(t), std::sin(t)};
            const double r = norm_approx(s, u);
            boundary.emplace_back(u[0] / r, u[1] / r);
        }
    }

    double extent = 0;
    for (const auto& [x, y] : boundary) extent = std::max({extent, std::fabs(x), std::fabs(y)});
    extent *= 1.15;

    // y is flipped once by the group transform, so point lists hold plain coordinates.
    std::ostringstream out;
    out.precision(10);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"" << -extent << ' ' << -extent
        << ' ' << 2 * extent << ' ' << 2 * extent << "\">\n";
    out << "  <title>" << s.describe() << "</title>\n";
    out << "  <g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"1.5\">\n";
    out << "    <line x1=\"" << -extent << "\" y1=\"0\" x2=\"" << extent
        << "\" y2=\"0\" stroke=\"#bbbbbb\" vector-effect=\"non-scaling-stroke\"/>\n";
    out << "    <line x1=\"0\" y1=\"" << -extent << "\" x2=\"0\" y2=\"" << extent
        << "\" stroke=\"#bbbbbb\" vector-effect=\"non-scaling-stroke\"/>\n";
    out << "    <polygon points=\"";
    for (std::size_t i = 0; i < boundary.size(); ++i)
        out << (i ? " " : "") << boundary[i].first << ',' << boundary[i].second;
    out << "\" stroke=\"#1f4e99\" fill=\"#1f4e99\" fill-opacity=\"0.12\" vector-effect=\"non-scaling-stroke\"/>\n";
    if (s.is_polytopal())
        for (const auto& [x, y] : boundary)
            out << "    <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << extent / 80 << "\" fill=\"#1f4e99\"/>\n";
    out << "  </g>\n</svg>\n";
    return out.str();
}

} // namespace hbops::io
