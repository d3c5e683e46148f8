#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"

namespace hbops {

Theorem1Report theorem1_verify(const LinOperator& t) {
    if (!t.domain().is_polytopal()) throw DomainError("theorem1_verify: the exact path needs a polytopal domain");
    NormReport nr = op_norm(t);
    if (!nr.value.exact) throw DomainError("theorem1_verify: operator norm is not exactly computable");
    if (*nr.value.exact != 1)
        throw DomainError("theorem1_verify: operator norm is " + to_string(*nr.value.exact) + ", expected 1");

    Theorem1Report r;
    r.rank = t.rank();
    r.scope = "attaining vertices and centroids of attainment faces";
    r.all_pass = true;
    for (std::size_t i = 0; i < nr.attainment_points.size(); ++i) {
        Theorem1Point pt;
        pt.x0 = nr.attainment_points[i];
        pt.is_vertex = i < nr.attaining_vertices;
        pt.d = compute_d(t.domain(), pt.x0);
        pt.support_dim = max_support_dim(t.codomain(), t.apply(pt.x0));
        pt.required = static_cast<long>(r.rank) - 1 - static_cast<long>(pt.d);
        pt.pass = static_cast<long>(pt.support_dim) >= pt.required;
        r.all_pass = r.all_pass && pt.pass;
        r.points.push_back(std::move(pt));
    }
    return r;
}

} // namespace hbops
