#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace hbops::lp {

void LPProblem::add_le(RationalVector row, Rational rhs) {
    ineq_rows.push_back(std::move(row));
    ineq_rhs.push_back(std::move(rhs));
}

void LPProblem::add_ge(RationalVector row, const Rational& rhs) {
    for (auto& x : row) x = -x;
    ineq_rows.push_back(std::move(row));
    ineq_rhs.push_back(-rhs);
}

void LPProblem::add_eq(RationalVector row, Rational rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
}

void LPProblem::validate() const {
    if (objective.size() != num_vars) throw DomainError("LPProblem: objective length != num_vars");
    if (ineq_rows.size() != ineq_rhs.size()) throw DomainError("LPProblem: inequality rhs count mismatch");
    if (eq_rows.size() != eq_rhs.size()) throw DomainError("LPProblem: equality rhs count mismatch");
    for (const auto& r : ineq_rows)
        if (r.size() != num_vars) throw DomainError("LPProblem: inequality row length mismatch");
    for (const auto& r : eq_rows)
        if (r.size() != num_vars) throw DomainError("LPProblem: equality row length mismatch");
    if (!nonnegative.empty() && nonnegative.size() != num_vars)
        throw DomainError("LPProblem: sign vector length mismatch");
}

namespace {

struct Entry {
    std::uint32_t col;
    Rational val;
};
using Row = std::vector<Entry>;

enum class RowState { Active, FreeDefining, Dropped };

const Rational* find(const Row& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const Entry& e, std::size_t c) { return e.col < c; });
    if (it == row.end() || it->col != col) return nullptr;
    return &it->val;
}

/// dst -= f * src, dropping exact zeros.
void sub_scaled(Row& dst, const Rational& f, const Row& src, Row& scratch, Rational& tmp) {
    scratch.clear();
    scratch.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->col < b->col)) {
            scratch.push_back(std::move(*a));
            ++a;
        } else if (a == dst.end() || b->col < a->col) {
            Entry e{b->col, Rational()};
            mpq_mul(e.val.get_mpq_t(), f.get_mpq_t(), b->val.get_mpq_t());
            mpq_neg(e.val.get_mpq_t(), e.val.get_mpq_t());
            scratch.push_back(std::move(e));
            ++b;
        } else {
            mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), b->val.get_mpq_t());
            mpq_sub(a->val.get_mpq_t(), a->val.get_mpq_t(), tmp.get_mpq_t());
            if (sgn(a->val) != 0) scratch.push_back(std::move(*a));
            ++a;
            ++b;
        }
    }
    dst.swap(scratch);
}

class Tableau {
  public:
    Tableau(const LPProblem& p) : problem_(p) {
        const std::size_t n = p.num_vars;
        const std::size_t m = p.ineq_rows.size() + 2 * p.eq_rows.size();
        num_struct_ = n;
        num_rows_ = m;
        first_slack_ = n;
        first_art_ = n + m;

        rows_.resize(m);
        rhs_.resize(m);
        state_.assign(m, RowState::Active);
        basis_.resize(m);

        // Rows are scaled to primitive integer vectors: tableau entries are then
        // ratios of integer minors, which keeps them short. The scale of each
        // input row is recorded to map duals back.
        row_scale_.assign(p.ineq_rows.size() + p.eq_rows.size(), Rational(1));
        std::size_t r = 0;
        auto put = [&](const RationalVector& a, const Rational& b, int sign, std::size_t input_row) {
            mpz_class l = 1, g = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(a[j]) != 0) {
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[j].get_den_mpz_t());
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[j].get_num_mpz_t());
                }
            const Rational scale = sgn(g) == 0 ? Rational(1) : Rational(l, g);
            row_scale_[input_row] = scale;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(a[j]) != 0) rows_[r].push_back({static_cast<std::uint32_t>(j), sign > 0 ? Rational(a[j] * scale) : Rational(-a[j] * scale)});
            rows_[r].push_back({static_cast<std::uint32_t>(first_slack_ + r), Rational(1)});
            rhs_[r] = sign > 0 ? Rational(b * scale) : Rational(-b * scale);
            basis_[r] = first_slack_ + r;
            ++r;
        };
        for (std::size_t i = 0; i < p.ineq_rows.size(); ++i) put(p.ineq_rows[i], p.ineq_rhs[i], +1, i);
        // Equalities as a pair of opposite inequalities.
        for (std::size_t i = 0; i < p.eq_rows.size(); ++i) {
            put(p.eq_rows[i], p.eq_rhs[i], +1, p.ineq_rows.size() + i);
            put(p.eq_rows[i], p.eq_rhs[i], -1, p.ineq_rows.size() + i);
        }

        // One potential artificial per row: free-variable pivots can flip rhs signs.
        num_cols_ = first_art_ + m;

        is_basic_.assign(num_cols_, false);
        for (std::size_t i = 0; i < m; ++i) is_basic_[basis_[i]] = true;
        z2_ = zeros(num_cols_);
        for (std::size_t j = 0; j < n; ++j) z2_[j] = p.objective[j];
        z2_rhs_ = 0;
        z1_ = zeros(num_cols_);
        z1_rhs_ = 0;
    }

    LPResult run() {
        LPResult res;
        eliminate_free_variables();
        if (!phase_one()) {
            res.status = LPStatus::Infeasible;
            res.pivots = pivots_;
            return res;
        }
        for (std::size_t j : unpivoted_free_)
            if (sgn(z2_[j]) != 0) {
                res.status = LPStatus::Unbounded;
                res.pivots = pivots_;
                return res;
            }
        if (!iterate(z2_)) {
            res.status = LPStatus::Unbounded;
            res.pivots = pivots_;
            return res;
        }
        res.status = LPStatus::Optimal;
        res.point = zeros(num_struct_);
        for (std::size_t r = 0; r < num_rows_; ++r)
            if (state_[r] != RowState::Dropped && basis_[r] < num_struct_) res.point[basis_[r]] = rhs_[r];
        res.value = dot(problem_.objective, res.point);

        const std::size_t mi = problem_.ineq_rows.size();
        res.ineq_duals.resize(mi);
        for (std::size_t i = 0; i < mi; ++i) res.ineq_duals[i] = z2_[first_slack_ + i] * row_scale_[i];
        res.eq_duals.resize(problem_.eq_rows.size());
        for (std::size_t i = 0; i < problem_.eq_rows.size(); ++i)
            res.eq_duals[i] = (z2_[first_slack_ + mi + 2 * i] - z2_[first_slack_ + mi + 2 * i + 1]) * row_scale_[mi + i];
        res.pivots = pivots_;
        return res;
    }

  private:
    bool is_free_var(std::size_t j) const { return j < num_struct_ && !problem_.is_nonnegative(j); }
    bool is_artificial(std::size_t j) const { return j >= first_art_; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational* pv = find(rows_[r], c);
        if (!pv || sgn(*pv) == 0) throw InternalError("simplex: zero pivot");
        Rational inv = 1 / *pv;
        if (inv != 1) {
            for (auto& e : rows_[r]) e.val *= inv;
            rhs_[r] *= inv;
        }
        const Row& prow = rows_[r];
        for (std::size_t i = 0; i < num_rows_; ++i) {
            if (i == r || state_[i] == RowState::Dropped) continue;
            const Rational* f = find(rows_[i], c);
            if (!f) continue;
            Rational factor = *f;
            sub_scaled(rows_[i], factor, prow, scratch_, tmp_);
            mpq_mul(tmp_.get_mpq_t(), factor.get_mpq_t(), rhs_[r].get_mpq_t());
            mpq_sub(rhs_[i].get_mpq_t(), rhs_[i].get_mpq_t(), tmp_.get_mpq_t());
        }
        update_objective(z1_, z1_rhs_, r, c);
        update_objective(z2_, z2_rhs_, r, c);
        is_basic_[basis_[r]] = false;
        basis_[r] = c;
        is_basic_[c] = true;
        ++pivots_;
    }

    void update_objective(RationalVector& z, Rational& zr, std::size_t r, std::size_t c) {
        if (sgn(z[c]) == 0) return;
        Rational f = z[c];
        for (const auto& e : rows_[r]) {
            mpq_mul(tmp_.get_mpq_t(), f.get_mpq_t(), e.val.get_mpq_t());
            mpq_sub(z[e.col].get_mpq_t(), z[e.col].get_mpq_t(), tmp_.get_mpq_t());
        }
        mpq_mul(tmp_.get_mpq_t(), f.get_mpq_t(), rhs_[r].get_mpq_t());
        mpq_sub(zr.get_mpq_t(), zr.get_mpq_t(), tmp_.get_mpq_t());
    }

    void eliminate_free_variables() {
        for (std::size_t j = 0; j < num_struct_; ++j) {
            if (!is_free_var(j)) continue;
            std::size_t chosen = num_rows_;
            for (std::size_t r = 0; r < num_rows_; ++r)
                if (state_[r] == RowState::Active && find(rows_[r], j)) {
                    chosen = r;
                    break;
                }
            if (chosen == num_rows_) {
                unpivoted_free_.push_back(j);
                continue;
            }
            pivot(chosen, j);
            state_[chosen] = RowState::FreeDefining;
        }
    }

    bool phase_one() {
        std::size_t next_art = first_art_;
        bool any = false;
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (state_[r] != RowState::Active || sgn(rhs_[r]) >= 0) continue;
            for (auto& e : rows_[r]) e.val = -e.val;
            rhs_[r] = -rhs_[r];
            rows_[r].push_back({static_cast<std::uint32_t>(next_art), Rational(1)});
            is_basic_[basis_[r]] = false;
            basis_[r] = next_art;
            is_basic_[next_art] = true;
            ++next_art;
            any = true;
        }
        if (!any) return true;

        // Phase-one objective: minimize the sum of artificials.
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (state_[r] != RowState::Active || !is_artificial(basis_[r])) continue;
            for (const auto& e : rows_[r])
                if (!is_artificial(e.col)) z1_[e.col] -= e.val;
            z1_rhs_ -= rhs_[r];
        }
        iterate(z1_);
        if (sgn(z1_rhs_) != 0) return false;

        // Drive remaining (zero-level) artificials out of the basis.
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (state_[r] != RowState::Active || !is_artificial(basis_[r])) continue;
            std::size_t col = num_cols_;
            for (const auto& e : rows_[r])
                if (!is_artificial(e.col) && !is_basic_[e.col] && !is_free_var(e.col)) {
                    col = e.col;
                    break;
                }
            if (col == num_cols_) {
                state_[r] = RowState::Dropped;
                continue;
            }
            pivot(r, col);
        }
        return true;
    }

    bool eligible(std::size_t j) const {
        if (is_basic_[j] || is_free_var(j)) return false;
        // Artificials never re-enter once they leave the basis.
        return !is_artificial(j);
    }

    /// Most-negative reduced cost, falling back to Bland's rule after a run of
    /// degenerate pivots. Bland stays on until the objective strictly improves,
    /// so no basis can repeat and termination is kept. Returns false when unbounded.
    bool iterate(const RationalVector& z) {
        for (;;) {
            std::size_t enter = num_cols_;
            const bool bland = degenerate_streak_ >= kDegenerateLimit;
            for (std::size_t j = 0; j < num_cols_; ++j)
                if (sgn(z[j]) < 0 && eligible(j)) {
                    if (bland) {
                        enter = j;
                        break;
                    }
                    if (enter == num_cols_ || z[j] < z[enter]) enter = j;
                }
            if (enter == num_cols_) return true;

            std::size_t leave = num_rows_;
            Rational best, ratio;
            for (std::size_t r = 0; r < num_rows_; ++r) {
                if (state_[r] != RowState::Active) continue;
                const Rational* a = find(rows_[r], enter);
                if (!a || sgn(*a) <= 0) continue;
                mpq_div(ratio.get_mpq_t(), rhs_[r].get_mpq_t(), a->get_mpq_t());
                if (leave == num_rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == num_rows_) return false;
            degenerate_streak_ = sgn(best) == 0 ? degenerate_streak_ + 1 : 0;
            pivot(leave, enter);
        }
    }

    const LPProblem& problem_;
    std::size_t num_struct_ = 0, num_rows_ = 0, num_cols_ = 0;
    std::size_t first_slack_ = 0, first_art_ = 0;
    std::vector<Row> rows_;
    RationalVector rhs_;
    std::vector<RowState> state_;
    std::vector<std::size_t> basis_;
    std::vector<bool> is_basic_;
    RationalVector z1_, z2_;
    Rational z1_rhs_, z2_rhs_;
    std::vector<std::size_t> unpivoted_free_;
    RationalVector row_scale_;
    std::size_t pivots_ = 0;
    static constexpr std::size_t kDegenerateLimit = 50;
    std::size_t degenerate_streak_ = 0;
    Row scratch_;
    Rational tmp_;
};

} // namespace

bool verify_optimality(const LPProblem& p, const LPResult& res) {
    if (!res.optimal()) return false;
    const std::size_t n = p.num_vars;
    if (res.point.size() != n) return false;
    for (std::size_t j = 0; j < n; ++j)
        if (p.is_nonnegative(j) && sgn(res.point[j]) < 0) return false;
    for (std::size_t i = 0; i < p.ineq_rows.size(); ++i)
        if (dot(p.ineq_rows[i], res.point) > p.ineq_rhs[i]) return false;
    for (std::size_t i = 0; i < p.eq_rows.size(); ++i)
        if (dot(p.eq_rows[i], res.point) != p.eq_rhs[i]) return false;
    if (dot(p.objective, res.point) != res.value) return false;

    // Dual: y >= 0, reduced costs r = c + A^T y + E^T z, r_j = 0 (free), r_j >= 0 (x_j >= 0).
    if (res.ineq_duals.size() != p.ineq_rows.size() || res.eq_duals.size() != p.eq_rows.size()) return false;
    for (const auto& y : res.ineq_duals)
        if (sgn(y) < 0) return false;
    RationalVector reduced = p.objective;
    for (std::size_t i = 0; i < p.ineq_rows.size(); ++i) axpy(reduced, res.ineq_duals[i], p.ineq_rows[i]);
    for (std::size_t i = 0; i < p.eq_rows.size(); ++i) axpy(reduced, res.eq_duals[i], p.eq_rows[i]);
    for (std::size_t j = 0; j < n; ++j) {
        if (p.is_nonnegative(j) ? sgn(reduced[j]) < 0 : sgn(reduced[j]) != 0) return false;
    }
    // Duality gap: c.x - (-(b.y + e.z)) - r.x must vanish.
    Rational dual_value = -(dot(p.ineq_rhs, res.ineq_duals) + dot(p.eq_rhs, res.eq_duals));
    Rational gap = res.value - dual_value - dot(reduced, res.point);
    return sgn(gap) == 0 && sgn(dot(reduced, res.point)) == 0;
}

LPResult solve(const LPProblem& problem) {
    problem.validate();
    Tableau t(problem);
    LPResult res = t.run();
    if (res.optimal() && !verify_optimality(problem, res))
        throw InternalError("simplex: optimality certificate failed verification");
    return res;
}

} // namespace hbops::lp
