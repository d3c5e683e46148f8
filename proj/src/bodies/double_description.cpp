// Double description method for the homogenized cone
//
//   C = { (x, t) : t - a_i.x >= 0, t >= 0 }.
//
// For a bounded region containing 0 in its interior C is pointed and every
// extreme ray has t > 0, so the vertices are x / t over the extreme rays.
// Rays are kept as primitive integer vectors; adjacency uses the
// combinatorial test on zero sets, which is exact for a minimal ray set.

#include "hbops/bodies.hpp"
#include "hbops/error.hpp"

#include <algorithm>
#include <cstdint>

namespace hbops {
namespace {

class Bitset {
  public:
    explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    Bitset operator&(const Bitset& o) const {
        Bitset r = *this;
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
        return r;
    }
    bool subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

  private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    RationalVector z;
    Bitset zeros;
};

void make_primitive(RationalVector& z) {
    mpz_class den = 1;
    for (const auto& v : z) den = lcm(den, v.get_den());
    mpz_class g = 0;
    for (auto& v : z) {
        v *= den;
        g = gcd(g, v.get_num());
    }
    if (g > 1)
        for (auto& v : z) v /= g;
}

} // namespace

std::vector<RationalVector> vertex_enumeration(const std::vector<RationalVector>& normals, std::size_t dim) {
    if (dim == 0) throw DomainError("vertex_enumeration: zero dimension");
    const std::size_t d = dim + 1;

    // Constraint rows g with g.(x, t) >= 0; row 0 is t >= 0.
    std::vector<RationalVector> g;
    g.reserve(normals.size() + 1);
    g.push_back(unit_vector(d, dim));
    for (const auto& a : normals) {
        if (a.size() != dim) throw DomainError("vertex_enumeration: normal of wrong dimension");
        RationalVector row(d);
        for (std::size_t j = 0; j < dim; ++j) row[j] = -a[j];
        row[dim] = 1;
        g.push_back(std::move(row));
    }
    const std::size_t m = g.size();

    // Initial simplicial cone from the first d independent rows.
    std::vector<std::size_t> basis;
    std::vector<RationalVector> chosen;
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
        chosen.push_back(g[i]);
        if (rank(chosen, d) == chosen.size()) {
            basis.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    if (basis.size() < d) throw DomainError("vertex_enumeration: region is unbounded");

    RationalMatrix inv = inverse(RationalMatrix::from_rows(chosen, d));
    std::vector<bool> processed(m, false);
    for (auto i : basis) processed[i] = true;

    auto zero_set = [&](const RationalVector& z) {
        Bitset bits(m);
        for (std::size_t i = 0; i < m; ++i)
            if (processed[i] && sgn(dot(g[i], z)) == 0) bits.set(i);
        return bits;
    };

    std::vector<Ray> rays;
    for (std::size_t c = 0; c < d; ++c) {
        RationalVector z = inv.column(c);
        make_primitive(z);
        rays.push_back({z, Bitset(m)});
    }
    for (auto& r : rays) r.zeros = zero_set(r.z);

    for (std::size_t i = 0; i < m; ++i) {
        if (processed[i]) continue;
        processed[i] = true;
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(g[i], rays[r].z);
            int s = sgn(val[r]);
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
            else rays[r].zeros.set(i);
        }
        if (neg.empty()) continue;

        std::vector<Ray> next;
        next.reserve(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (sgn(val[r]) >= 0) next.push_back(rays[r]);

        for (auto p : pos) {
            for (auto q : neg) {
                Bitset common = rays[p].zeros & rays[q].zeros;
                if (common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.subset_of(rays[r].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                RationalVector z = scaled(rays[q].z, val[p]);
                axpy(z, -val[q], rays[p].z);
                make_primitive(z);
                Bitset zeros = common;
                zeros.set(i);
                next.push_back({std::move(z), std::move(zeros)});
            }
        }
        rays = std::move(next);
    }

    std::vector<RationalVector> vertices;
    vertices.reserve(rays.size());
    for (const auto& r : rays) {
        const Rational& t = r.z[dim];
        if (sgn(t) <= 0) throw DomainError("vertex_enumeration: region is unbounded");
        RationalVector x(dim);
        for (std::size_t j = 0; j < dim; ++j) x[j] = r.z[j] / t;
        vertices.push_back(std::move(x));
    }
    canonicalize(vertices);
    return vertices;
}

} // namespace hbops
