#include "hbops/bodies.hpp"
#include "hbops/error.hpp"

#include <algorithm>
#include <cmath>

namespace hbops {
namespace {

constexpr double kNearTol = 1e-12;

void check_dim(const SpaceHandle& s, std::size_t n) {
    if (n != s.dim())
        throw DomainError("dimension mismatch: vector of length " + std::to_string(n) + " for space of dimension " +
                          std::to_string(s.dim()));
}

std::span<const Rational> block(std::span<const Rational> v, std::size_t& offset, std::size_t len) {
    auto out = v.subspan(offset, len);
    offset += len;
    return out;
}

Rational max_dot(const std::vector<RationalVector>& normals, std::span<const Rational> v) {
    Rational best = 0;
    for (const auto& a : normals) {
        Rational d = dot(a, v);
        if (d > best) best = d;
    }
    return best;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    return Rational(a, b);
}

double pnorm_double(std::span<const double> v, double p) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    if (m == 0) return 0;
    double s = 0;
    for (double x : v) s += std::pow(std::fabs(x) / m, p);
    return m * std::pow(s, 1.0 / p);
}

NormValue pball_norm(const Exponent& e, std::span<const Rational> v) {
    switch (e.kind) {
    case Exponent::Kind::One: {
        Rational s = 0;
        for (const auto& x : v) s += abs(x);
        return NormValue::of(s);
    }
    case Exponent::Kind::Inf: {
        Rational s = 0;
        for (const auto& x : v) s = std::max<Rational>(s, abs(x));
        return NormValue::of(s);
    }
    case Exponent::Kind::Two: {
        Rational s = 0;
        for (const auto& x : v) s += x * x;
        if (auto r = exact_sqrt(s)) return NormValue::of(*r);
        return NormValue::inexact(std::sqrt(s.get_d()));
    }
    case Exponent::Kind::Rational: {
        std::size_t nonzero = 0;
        Rational last = 0;
        for (const auto& x : v)
            if (sgn(x) != 0) {
                ++nonzero;
                last = abs(x);
            }
        if (nonzero <= 1) return NormValue::of(last);
        auto d = to_doubles(v);
        return NormValue::inexact(pnorm_double(d, e.value.get_d()));
    }
    }
    return {};
}

Cmp compare(const Rational& a, const Rational& b) {
    int c = cmp(a, b);
    return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
}

Cmp compare_approx(double a, const Rational& r) {
    double rd = r.get_d();
    double tol = kNearTol * std::max(1.0, std::fabs(rd));
    if (std::fabs(a - rd) <= tol) return Cmp::Near;
    return a < rd ? Cmp::Less : Cmp::Greater;
}

Rational pow_ui(const Rational& q, unsigned long e) {
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(b.get_mpz_t(), q.get_den_mpz_t(), e);
    return Rational(a, b);
}

Cmp compare_pball(const Exponent& e, std::span<const Rational> v, const Rational& r) {
    NormValue nv = pball_norm(e, v);
    if (nv.exact) return compare(*nv.exact, r);
    if (sgn(r) <= 0) return Cmp::Greater;
    if (e.kind == Exponent::Kind::Two) {
        Rational s = 0;
        for (const auto& x : v) s += x * x;
        return compare(s, r * r);
    }
    // p = a/b with all nonzero entries of magnitude c, s of them:
    // norm = c s^(b/a), so compare c^a s^b with r^a.
    Rational c = 0;
    unsigned long s = 0;
    bool uniform = true;
    for (const auto& x : v) {
        if (sgn(x) == 0) continue;
        if (s == 0) c = abs(x);
        else if (abs(x) != c) uniform = false;
        ++s;
    }
    const mpz_class& a = e.value.get_num();
    const mpz_class& b = e.value.get_den();
    if (uniform && a.fits_ulong_p() && b.fits_ulong_p() && a <= 64 && b <= 64) {
        Rational lhs = pow_ui(c, a.get_ui()) * pow_ui(Rational(s), b.get_ui());
        return compare(lhs, pow_ui(r, a.get_ui()));
    }
    return compare_approx(nv.approx, r);
}

} // namespace

NormValue norm(const SpaceHandle& s, std::span<const Rational> v) {
    check_dim(s, v.size());
    switch (s.kind()) {
    case BodyKind::PolytopeH: return NormValue::of(max_dot(s.data(), v));
    case BodyKind::PolytopeV: return NormValue::of(max_dot(s.materialize().normals, v));
    case BodyKind::PBall: return pball_norm(s.exponent(), v);
    case BodyKind::Scale: {
        NormValue inner = norm(s.inner(), v);
        if (inner.exact) return NormValue::of(*inner.exact / s.factor());
        return NormValue::inexact(inner.approx / s.factor().get_d());
    }
    case BodyKind::SumInf:
    case BodyKind::SumOne:
    case BodyKind::Intersect: {
        const bool sum = s.kind() == BodyKind::SumOne;
        std::size_t offset = 0;
        Rational acc = 0;
        double approx = 0;
        bool exact = true;
        for (const auto& part : s.parts()) {
            auto piece = s.kind() == BodyKind::Intersect ? v : block(v, offset, part.dim());
            NormValue pv = norm(part, piece);
            exact = exact && pv.exact.has_value();
            if (pv.exact) acc = sum ? Rational(acc + *pv.exact) : std::max(acc, *pv.exact);
            approx = sum ? approx + pv.approx : std::max(approx, pv.approx);
        }
        if (exact) return NormValue::of(acc);
        return NormValue::inexact(approx);
    }
    }
    throw InternalError("norm: unknown body kind");
}

double norm_approx(const SpaceHandle& s, std::span<const double> v) {
    check_dim(s, v.size());
    auto max_dot_d = [&](const std::vector<RationalVector>& normals) {
        double best = 0;
        for (const auto& a : normals) {
            double d = 0;
            for (std::size_t i = 0; i < v.size(); ++i) d += a[i].get_d() * v[i];
            best = std::max(best, d);
        }
        return best;
    };
    switch (s.kind()) {
    case BodyKind::PolytopeH: return max_dot_d(s.data());
    case BodyKind::PolytopeV: return max_dot_d(s.materialize().normals);
    case BodyKind::PBall: {
        const auto& e = s.exponent();
        switch (e.kind) {
        case Exponent::Kind::One: return pnorm_double(v, 1.0);
        case Exponent::Kind::Two: return pnorm_double(v, 2.0);
        case Exponent::Kind::Rational: return pnorm_double(v, e.value.get_d());
        case Exponent::Kind::Inf: {
            double m = 0;
            for (double x : v) m = std::max(m, std::fabs(x));
            return m;
        }
        }
        return 0;
    }
    case BodyKind::Scale: return norm_approx(s.inner(), v) / s.factor().get_d();
    case BodyKind::SumInf:
    case BodyKind::SumOne:
    case BodyKind::Intersect: {
        std::size_t offset = 0;
        double acc = 0;
        for (const auto& part : s.parts()) {
            std::span<const double> piece = v;
            if (s.kind() != BodyKind::Intersect) {
                piece = v.subspan(offset, part.dim());
                offset += part.dim();
            }
            double pv = norm_approx(part, piece);
            acc = s.kind() == BodyKind::SumOne ? acc + pv : std::max(acc, pv);
        }
        return acc;
    }
    }
    throw InternalError("norm_approx: unknown body kind");
}

Cmp compare_norm(const SpaceHandle& s, std::span<const Rational> v, const Rational& r) {
    check_dim(s, v.size());
    switch (s.kind()) {
    case BodyKind::PolytopeH:
    case BodyKind::PolytopeV: return compare(*norm(s, v).exact, r);
    case BodyKind::PBall: return compare_pball(s.exponent(), v, r);
    case BodyKind::Scale: return compare_norm(s.inner(), v, r * s.factor());
    case BodyKind::SumInf:
    case BodyKind::Intersect: {
        // max of parts: Greater wins, then Near, then Equal.
        std::size_t offset = 0;
        bool near = false, equal = false;
        for (const auto& part : s.parts()) {
            auto piece = s.kind() == BodyKind::Intersect ? v : block(v, offset, part.dim());
            Cmp c = compare_norm(part, piece, r);
            if (c == Cmp::Greater) return Cmp::Greater;
            near = near || c == Cmp::Near;
            equal = equal || c == Cmp::Equal;
        }
        return near ? Cmp::Near : equal ? Cmp::Equal : Cmp::Less;
    }
    case BodyKind::SumOne: {
        std::size_t offset = 0;
        Rational exact_sum = 0;
        std::vector<std::pair<std::size_t, std::size_t>> inexact; // part index, offset
        double approx = 0;
        for (std::size_t i = 0; i < s.parts().size(); ++i) {
            const auto& part = s.parts()[i];
            std::size_t start = offset;
            NormValue pv = norm(part, block(v, offset, part.dim()));
            approx += pv.approx;
            if (pv.exact) exact_sum += *pv.exact;
            else inexact.emplace_back(i, start);
        }
        if (inexact.empty()) return compare(exact_sum, r);
        Rational rest = r - exact_sum;
        if (sgn(rest) < 0) return Cmp::Greater;
        if (inexact.size() == 1) {
            auto [i, start] = inexact.front();
            return compare_norm(s.parts()[i], v.subspan(start, s.parts()[i].dim()), rest);
        }
        return compare_approx(approx, r);
    }
    }
    throw InternalError("compare_norm: unknown body kind");
}

bool on_unit_sphere(const SpaceHandle& s, std::span<const Rational> v) {
    Cmp c = compare_norm(s, v, 1);
    return c == Cmp::Equal || c == Cmp::Near;
}

NormValue dual_norm(const SpaceHandle& s, std::span<const Rational> h) { return norm(s.polar(), h); }

} // namespace hbops
