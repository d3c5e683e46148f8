#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"

#include <algorithm>
#include <cmath>

namespace hbops {
namespace {

constexpr std::size_t kMaxEnumeratedAtoms = 20;

// sup over |f| <= 1 of |sum_a f(p_a) v_a| = max over sign patterns; for a
// polytopal Y this is max over facet normals y* of sum_a |y*(v_a)|.
NormValue atomic_norm(const SpaceHandle& y, const std::vector<ExtensionCertificate::Atom>& atoms,
                      std::vector<std::string>& diag, bool& ok) {
    ok = false;
    if (y.is_polytopal()) {
        Rational best = 0;
        for (const auto& ys : y.materialize().normals) {
            Rational s = 0;
            for (const auto& a : atoms) s += abs(dot(ys, a.vector));
            best = std::max(best, s);
        }
        ok = best == 1;
        if (!ok) diag.push_back("extension norm is " + to_string(best) + ", expected 1");
        return NormValue::of(best);
    }
    if (atoms.size() > kMaxEnumeratedAtoms) {
        diag.push_back("too many atoms (" + std::to_string(atoms.size()) + ") to enumerate sign patterns");
        return NormValue::inexact(std::nan(""));
    }
    // sigma_0 = +1 by symmetry of the norm.
    const std::size_t m = atoms.size();
    bool greater = false, reached = false, near = false, all_exact = true;
    double top = 0;
    Rational top_exact = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (m - 1)); ++mask) {
        RationalVector s = atoms[0].vector;
        for (std::size_t a = 1; a < m; ++a) {
            if ((mask >> (a - 1)) & 1U) s = sub(s, atoms[a].vector);
            else s = add(s, atoms[a].vector);
        }
        Cmp c = compare_norm(y, s, 1);
        const NormValue v = norm(y, s);
        top = std::max(top, v.approx);
        if (v.exact) top_exact = std::max(top_exact, *v.exact);
        else all_exact = false;
        greater = greater || c == Cmp::Greater;
        reached = reached || c == Cmp::Equal || c == Cmp::Near;
        near = near || c == Cmp::Near;
    }
    ok = !greater && reached;
    if (greater) diag.push_back("extension norm exceeds 1 (about " + std::to_string(top) + ")");
    else if (!reached) diag.push_back("extension norm is below 1 (about " + std::to_string(top) + ")");
    if (all_exact) return NormValue::of(top_exact);
    if (ok && !near) return NormValue::of(1);
    return NormValue::inexact(top);
}

} // namespace

CertificateCheck verify_certificate(const ExtensionCertificate& c) {
    CertificateCheck r;
    const SpaceHandle& x = c.op.domain();
    const SpaceHandle& y = c.op.codomain();
    const std::size_t n = x.dim(), q = y.dim();
    if (c.atoms.empty()) {
        r.diagnostics.push_back("certificate has no atoms");
        return r;
    }
    for (const auto& a : c.atoms)
        if (a.point.size() != n || a.vector.size() != q) {
            r.diagnostics.push_back("atom of the wrong dimension");
            return r;
        }

    const SpaceHandle xs = x.polar();
    r.atoms_on_sphere = true;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        Cmp cmp = compare_norm(xs, c.atoms[i].point, 1);
        if (cmp == Cmp::Equal || (cmp == Cmp::Near && !xs.is_polytopal())) continue;
        r.atoms_on_sphere = false;
        r.diagnostics.push_back("atom " + std::to_string(i) + " point is not on the dual unit sphere");
    }

    RationalMatrix sum(q, n);
    for (const auto& a : c.atoms)
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < n; ++j) sum(i, j) += a.vector[i] * a.point[j];
    r.restriction_ok = sum == c.op.matrix();
    if (!r.restriction_ok) r.diagnostics.push_back("atoms do not restrict to the claimed operator");

    r.norm = atomic_norm(y, c.atoms, r.diagnostics, r.norm_ok);

    std::size_t k = c.op.rank();
    r.rank_ok = k == c.rank;
    if (!r.rank_ok)
        r.diagnostics.push_back("operator rank is " + std::to_string(k) + ", claimed " + std::to_string(c.rank));

    r.valid = r.atoms_on_sphere && r.restriction_ok && r.norm_ok && r.rank_ok;
    return r;
}

} // namespace hbops
