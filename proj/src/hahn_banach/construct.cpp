// Rank-k Hahn-Banach operators from cube configurations.
//
// With x0* + sum b_i x_i* (|b_i| <= 1) in S(X*), y0 + sum a_i y_i in S(Y),
// x0 exposing the X* cube and a basis completion vanishing at x0:
//
//   Q1(f) = f(x0*) y0 + sum_{i<=n'} f(p_i) y_i,          p_i = x*_{m'+i} / |x*_{m'+i}|
//   Q2(f) = sum_theta 2^-m' f(x0* + sum theta_i x_i*) (y0 + sum alpha_i theta_i w_i)
//   Q     = (Q1 + Q2) / 2
//
// Every map is a finite sum of point evaluations, so Q is its own certificate.

#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"

#include <map>

namespace hbops {

std::size_t corollary_max_rank(const SpaceHandle& x, const SpaceHandle& y) {
    std::size_t f = compute_f(x.polar()).value + compute_f(y).value + 1;
    return std::min({x.dim(), y.dim(), f});
}

namespace {

// Unit vector along v, exactly; nullopt when the norm is irrational.
std::optional<RationalVector> exact_unit(const SpaceHandle& s, const RationalVector& v) {
    NormValue nv = norm(s, v);
    if (!nv.exact || sgn(*nv.exact) == 0) return std::nullopt;
    return scaled(v, 1 / *nv.exact);
}

} // namespace

Construction construct_rank_k(const SpaceHandle& x, const SpaceHandle& y, std::size_t k) {
    const std::size_t bound = corollary_max_rank(x, y);
    if (k < 1 || k > bound)
        throw DomainError("no Hahn-Banach operator of rank " + std::to_string(k) + " exists: the rank is at most min(dim X, dim Y, f(X*) + f(Y) + 1) = " +
                          std::to_string(bound));

    const SpaceHandle xs = x.polar();
    FResult fx = compute_f(xs);
    FResult fy = compute_f(y);
    const std::size_t m = std::min(fx.value, k - 1);
    const std::size_t nprime = k - 1 - m;
    if (nprime > fy.value) throw InternalError("construct_rank_k: split exceeds f(Y)");

    const WitnessedSupportSet& wx = fx.witness;
    const WitnessedSupportSet& wy = fy.witness;
    const RationalVector& x0s = wx.center;
    const RationalVector& x0 = wx.face.functional;
    const RationalVector& y0 = wy.center;
    const std::size_t n = x.dim(), q = y.dim();

    std::vector<RationalVector> given{x0s};
    for (std::size_t i = 0; i < m; ++i) given.push_back(wx.directions[i]);
    std::vector<RationalVector> basis = complete_basis_annihilating(x0, given);
    if (biorthogonal_vectors(basis).front() != x0)
        throw InternalError("construct_rank_k: x0 is not biorthogonal to the completed basis");

    // Q1 functionals p_i on S(X*).
    std::vector<RationalVector> p;
    for (std::size_t i = 0; i < nprime; ++i) {
        auto u = exact_unit(xs, basis[m + 1 + i]);
        if (!u) throw UnsupportedError("construct_rank_k: completion functional has an irrational dual norm");
        p.push_back(std::move(*u));
    }

    // Q2 targets: unused cube directions of the Y witness, then unit
    // coordinate vectors keeping the family independent.
    std::vector<RationalVector> family{y0};
    for (std::size_t i = 0; i < nprime; ++i) family.push_back(wy.directions[i]);
    std::vector<RationalVector> w;
    std::size_t from_cube = 0;
    for (std::size_t i = nprime; i < wy.directions.size() && w.size() < m; ++i) {
        family.push_back(wy.directions[i]);
        w.push_back(wy.directions[i]);
        ++from_cube;
    }
    for (std::size_t j = 0; j < q && w.size() < m; ++j) {
        auto u = exact_unit(y, unit_vector(q, j));
        if (!u) continue;
        family.push_back(*u);
        if (rank(family, q) != family.size()) {
            family.pop_back();
            continue;
        }
        w.push_back(std::move(*u));
    }
    if (w.size() < m) throw UnsupportedError("construct_rank_k: no exact unit completion of the codomain family");

    // alpha = 1 keeps Q2 inside B(Y) when every target is a cube direction.
    // Otherwise split the unit budget: cube directions contribute a point of
    // B(Y)/2 and the c unit completions at most c * (1/2c) = 1/2.
    const std::size_t completions = w.size() - from_cube;
    std::vector<Rational> alpha(m, 1);
    if (completions > 0)
        for (std::size_t i = 0; i < m; ++i)
            alpha[i] = i < from_cube ? Rational(1, 2) : Rational(1, 2 * completions);

    std::map<RationalVector, RationalVector, decltype(&lex_less)> atoms(&lex_less);
    auto add_atom = [&](const RationalVector& point, const RationalVector& vec) {
        auto [it, fresh] = atoms.try_emplace(point, vec);
        if (!fresh) it->second = add(it->second, vec);
    };
    const Rational half(1, 2);
    add_atom(x0s, scaled(y0, half));
    for (std::size_t i = 0; i < nprime; ++i) add_atom(p[i], scaled(wy.directions[i], half));
    const Rational weight = Rational(1, std::size_t{1} << m) * half;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        RationalVector point = x0s;
        RationalVector vec = y0;
        for (std::size_t i = 0; i < m; ++i) {
            const Rational theta = (mask >> i) & 1U ? -1 : 1;
            axpy(point, theta, wx.directions[i]);
            axpy(vec, theta * alpha[i], w[i]);
        }
        add_atom(point, scaled(vec, weight));
    }

    RationalMatrix t(q, n);
    std::vector<ExtensionCertificate::Atom> list;
    for (auto& [point, vec] : atoms) {
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < n; ++j) t(i, j) += vec[i] * point[j];
        list.push_back({point, vec});
    }
    LinOperator op(t, x, y);
    Construction c{op, ExtensionCertificate{std::move(list), op, k}, x0, y0, m, nprime};

    if (op.apply(x0) != y0) throw InternalError("construct_rank_k: T x0 differs from y0");
    if (op.rank() != k) throw InternalError("construct_rank_k: constructed operator has the wrong rank");
    CertificateCheck chk = verify_certificate(c.certificate);
    if (!chk.valid) {
        std::string msg;
        for (const auto& d : chk.diagnostics) msg += "; " + d;
        throw InternalError("construct_rank_k: certificate rejected" + msg);
    }
    return c;
}

} // namespace hbops
