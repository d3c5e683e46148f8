#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"
#include "hbops/lp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hbops {
namespace {

// One vector from each antipodal pair: the one whose first nonzero entry is positive.
std::vector<RationalVector> pair_representatives(const std::vector<RationalVector>& vs) {
    std::vector<RationalVector> out;
    for (const auto& v : vs) {
        auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
        if (it != v.end() && sgn(*it) > 0) out.push_back(v);
    }
    return out;
}

void check_isometry(const SpaceHandle& x, const LinfEmbedding& e) {
    const std::size_t n = x.dim();
    auto sup = [&](const RationalVector& v) {
        Rational best = 0;
        for (const auto& c : e.coordinates) best = std::max<Rational>(best, abs(dot(c, v)));
        return best;
    };
    std::vector<RationalVector> probes;
    for (std::size_t i = 0; i < n; ++i) probes.push_back(unit_vector(n, i));
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
    for (int k = 0; k < 16; ++k) {
        RationalVector v(n);
        for (auto& c : v) c = Rational(num(rng), den(rng));
        probes.push_back(std::move(v));
    }
    for (auto& v : probes) {
        for (auto& c : v) c.canonicalize();
        if (sup(v) != *norm(x, v).exact)
            throw InternalError("embed_linf: embedding is not isometric at " + to_string(v));
    }
}

} // namespace

LinfEmbedding embed_linf(const SpaceHandle& x) {
    if (!x.is_polytopal()) throw DomainError("embed_linf: " + x.describe() + " is not polytopal");
    LinfEmbedding e;
    e.coordinates = pair_representatives(x.materialize().normals);
    check_isometry(x, e);
    return e;
}

Rational linf_operator_norm(const RationalMatrix& a, const SpaceHandle& y) {
    if (!y.is_polytopal()) throw DomainError("linf_operator_norm: codomain is not polytopal");
    if (a.rows() != y.dim()) throw DomainError("linf_operator_norm: dimension mismatch");
    Rational best = 0;
    for (const auto& ys : y.materialize().normals) {
        Rational s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += abs(dot(ys, a.column(j)));
        best = std::max(best, s);
    }
    return best;
}

namespace {

// min t subject to E J = T and sum_j |(y*_r E)_j| <= t for r in `active`.
// Returns (t, E); E is q x N.
std::pair<Rational, RationalMatrix> extension_lp(const RationalMatrix& tm, const std::vector<RationalVector>& coords,
                                                 const std::vector<RationalVector>& duals,
                                                 const std::vector<std::size_t>& active) {
    const std::size_t q = tm.rows(), n = tm.cols(), nn = coords.size(), rr = active.size();

    // Variables: E (q x N, free) | t | u (active x N, >= 0).
    const std::size_t t_var = q * nn;
    auto e_var = [&](std::size_t i, std::size_t j) { return i * nn + j; };
    auto u_var = [&](std::size_t r, std::size_t j) { return t_var + 1 + r * nn + j; };
    lp::LPProblem p(t_var + 1 + rr * nn);
    p.nonnegative.assign(p.num_vars, true);
    for (std::size_t v = 0; v < t_var; ++v) p.nonnegative[v] = false;
    p.objective[t_var] = 1;

    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            RationalVector row = zeros(p.num_vars);
            for (std::size_t j = 0; j < nn; ++j) row[e_var(i, j)] = coords[j][k];
            p.add_eq(std::move(row), tm(i, k));
        }
    for (std::size_t r = 0; r < rr; ++r) {
        const RationalVector& ys = duals[active[r]];
        for (std::size_t j = 0; j < nn; ++j) {
            RationalVector plus = zeros(p.num_vars);
            for (std::size_t i = 0; i < q; ++i) plus[e_var(i, j)] = ys[i];
            RationalVector minus = negated(plus);
            plus[u_var(r, j)] = -1;
            minus[u_var(r, j)] = -1;
            p.add_le(std::move(plus), 0);
            p.add_le(std::move(minus), 0);
        }
        RationalVector total = zeros(p.num_vars);
        for (std::size_t j = 0; j < nn; ++j) total[u_var(r, j)] = 1;
        total[t_var] = -1;
        p.add_le(std::move(total), 0);
    }

    lp::LPResult res = lp::solve(p);
    if (!res.optimal()) throw InternalError("min_extension_norm: extension LP is not optimal");
    RationalMatrix e(q, nn);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < nn; ++j) e(i, j) = res.point[e_var(i, j)];
    return {res.value, std::move(e)};
}

Rational row_cost(const RationalVector& ys, const RationalMatrix& e) {
    Rational s = 0;
    for (std::size_t j = 0; j < e.cols(); ++j) s += abs(dot(ys, e.column(j)));
    return s;
}

} // namespace

// Codomain functionals enter lazily: each round solves the LP over the active
// ones and adds the functional most violated by the current extension. Every
// round is a relaxation, so the value at termination is the exact optimum.
MinExtension min_extension(const LinOperator& t) {
    const SpaceHandle& x = t.domain();
    const SpaceHandle& y = t.codomain();
    if (!x.is_polytopal() || !y.is_polytopal())
        throw DomainError("min_extension_norm requires polytopal domain and codomain");

    MinExtension out;
    out.embedding = embed_linf(x);
    const auto& coords = out.embedding.coordinates;
    const auto duals = pair_representatives(y.materialize().normals);
    const std::size_t n = x.dim();

    // Seed with the functional that is worst for the least-squares extension.
    const RationalMatrix j = out.embedding.matrix(n);
    const RationalMatrix jt = j.transpose();
    const RationalMatrix e0 = t.matrix() * inverse(jt * j) * jt;
    std::vector<std::size_t> active{0};
    {
        Rational top = row_cost(duals[0], e0);
        for (std::size_t r = 1; r < duals.size(); ++r)
            if (Rational c = row_cost(duals[r], e0); c > top) {
                top = c;
                active[0] = r;
            }
    }

    for (;;) {
        auto [value, e] = extension_lp(t.matrix(), coords, duals, active);
        std::size_t worst = duals.size();
        Rational top = value;
        for (std::size_t r = 0; r < duals.size(); ++r) {
            Rational c = row_cost(duals[r], e);
            if (c > top) {
                top = c;
                worst = r;
            }
        }
        if (worst == duals.size()) {
            out.value = std::move(value);
            out.extension = std::move(e);
            break;
        }
        active.push_back(worst);
    }

    if (out.extension * j != t.matrix())
        throw InternalError("min_extension_norm: extension does not restrict to T");
    if (linf_operator_norm(out.extension, y) != out.value)
        throw InternalError("min_extension_norm: extension norm differs from the LP value");
    return out;
}

Rational min_extension_norm(const LinOperator& t) { return min_extension(t).value; }

std::string to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::IsHB: return "IsHB";
    case VerdictKind::NotHB: return "NotHB";
    case VerdictKind::LowerBoundOnly: return "LowerBoundOnly";
    }
    return "?";
}

HBVerdict is_hahn_banach(const LinOperator& t, const ExtensionCertificate* hint, std::size_t net_size) {
    HBVerdict v;
    const bool px = t.domain().is_polytopal();
    const bool py = t.codomain().is_polytopal();
    NormReport nr = op_norm(t);
    v.op_norm = nr.value;

    if (px && py) {
        MinExtension me = min_extension(t);
        const Rational& norm_t = *nr.value.exact;
        v.method = "exact LP";
        v.min_extension_norm = me.value;
        v.embedding = me.embedding;
        if (me.value == norm_t) {
            v.kind = VerdictKind::IsHB;
            v.extension = std::move(me.extension);
        } else {
            v.kind = VerdictKind::NotHB;
            v.gap = me.value - norm_t;
        }
        return v;
    }

    if (px && hint && hint->op.matrix() == t.matrix() && hint->op.domain().same_expression(t.domain()) &&
        hint->op.codomain().same_expression(t.codomain())) {
        CertificateCheck chk = verify_certificate(*hint);
        Cmp unit = nr.value.exact ? (*nr.value.exact == 1 ? Cmp::Equal : Cmp::Less) : Cmp::Near;
        if (chk.valid && (unit == Cmp::Equal || (unit == Cmp::Near && std::fabs(nr.value.approx - 1) <= 1e-9))) {
            v.kind = VerdictKind::IsHB;
            v.method = "extension certificate";
            return v;
        }
    }

    v.kind = VerdictKind::LowerBoundOnly;
    v.net_size = net_size;
    v.bound = hb_lower_bound(t, net_size);
    v.method = "inscribed-net LP lower bound";
    return v;
}

} // namespace hbops
