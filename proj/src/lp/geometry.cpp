#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include <algorithm>

namespace hbops::lp {

std::vector<RationalVector> affine_directions(const std::vector<RationalVector>& points) {
    if (points.empty()) throw DomainError("affine_dim: empty point list");
    const std::size_t n = points.front().size();
    std::vector<RationalVector> dirs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalVector d = sub(points[i], points[0]);
        if (is_zero(d)) continue;
        dirs.push_back(std::move(d));
        if (rank(dirs, n) != dirs.size()) dirs.pop_back();
        if (dirs.size() == n) break;
    }
    return dirs;
}

std::size_t affine_dim(const std::vector<RationalVector>& points) {
    if (points.empty()) throw DomainError("affine_dim: empty point list");
    if (points.size() == 1) return 0;
    std::vector<RationalVector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
    return rank(diffs, points.front().size());
}

Rational max_cube_scale(const FaceDescriptor& face, const RationalVector& center,
                        const std::vector<RationalVector>& dirs) {
    if (dirs.empty()) throw DomainError("max_cube_scale: no directions");
    if (dirs.size() > 10) throw DomainError("max_cube_scale: more than 10 directions");
    if (face.carrier.empty()) throw DomainError("max_cube_scale: face has no carrier inequalities");

    // Corner c + s * sum theta_i d_i satisfies a.x <= 1 for every theta iff
    // s * sum_i |a.d_i| <= 1 - a.c, since s >= 0 and the worst theta matches
    // the signs of a.d_i. One row per carrier facet.
    std::vector<std::pair<Rational, Rational>> rows;
    for (const auto& a : face.carrier) {
        Rational slack = 1 - dot(a, center);
        if (sgn(slack) < 0) throw DomainError("max_cube_scale: center outside the body");
        Rational coeff = 0;
        for (const auto& d : dirs) coeff += abs(dot(a, d));
        if (sgn(coeff) == 0) continue;
        rows.emplace_back(std::move(coeff), std::move(slack));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    LPProblem p(1);
    p.nonnegative = {true};
    p.objective = {Rational(-1)};
    for (auto& [coeff, slack] : rows) p.add_le({coeff}, slack);
    LPResult r = solve(p);
    if (r.status == LPStatus::Unbounded) throw DomainError("max_cube_scale: directions leave no bound");
    if (!r.optimal()) throw InternalError("max_cube_scale: infeasible scaling LP");
    if (sgn(r.point[0]) == 0) throw DomainError("center not relative-interior");
    return r.point[0];
}

} // namespace hbops::lp
