#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace asymgeo {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
    std::array<double, 3> coeff{0, 0, 0};  // coeff . x <= rhs
    double rhs = 0;
};

struct LinearProgram {
    int num_vars = 0;  // 1, 2 or 3
    std::array<double, 3> objective{0, 0, 0};  // minimized
    std::vector<LpConstraint> constraints;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::array<double, 3> point{0, 0, 0};
    double value = 0;
    std::vector<int> tight_set;                        // indices of active constraints
    std::vector<std::pair<int, double>> dual;          // nonnegative multipliers on a
                                                       // tight subset certifying optimality
};

namespace lpdetail {

using Row = std::array<double, 4>;  // a0,a1,a2 | b

constexpr double kBox = 1e8;

inline std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double active_norm(const Row& r, const std::vector<int>& vars) {
    double s = 0;
    for (int v : vars) s += r[v] * r[v];
    return std::sqrt(s);
}

struct RecResult {
    bool feasible = true;
    std::array<double, 3> x{0, 0, 0};
};

// Seidel's randomized incremental LP, recursing on dimension. Rows stay in
// original coordinates; eliminated variables keep zero coefficients and are
// back-substituted on return. `rows` must already contain the bounding box.
inline RecResult solve_rec(std::vector<Row> rows, std::array<double, 3> obj,
                           std::vector<int> vars) {
    RecResult res;
    if (vars.size() == 1) {
        const int v = vars[0];
        double lo = -kBox, hi = kBox;
        for (const Row& r : rows) {
            const double a = r[v];
            if (std::fabs(a) <= 1e-13) {
                if (r[3] < -1e-9) return {false, {}};
                continue;
            }
            if (a > 0)
                hi = std::min(hi, r[3] / a);
            else
                lo = std::max(lo, r[3] / a);
        }
        if (lo > hi + 1e-9) return {false, {}};
        const double c = obj[v];
        res.x[v] = c > 0 ? lo : (c < 0 ? hi : std::clamp(0.0, lo, hi));
        return res;
    }

    // Start at the box optimum; constraints were pre-normalized per level.
    for (int v : vars) res.x[v] = obj[v] > 0 ? -kBox : (obj[v] < 0 ? kBox : 0.0);

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& h = rows[i];
        double hx = -h[3];
        for (int v : vars) hx += h[v] * res.x[v];
        double xs = 1.0;
        for (int v : vars) xs = std::max(xs, std::fabs(res.x[v]));
        if (hx <= 1e-11 * xs) continue;

        // Violated: optimum lies on this hyperplane. Eliminate the variable
        // with the largest coefficient and recurse on the rest.
        int k = vars[0];
        for (int v : vars)
            if (std::fabs(h[v]) > std::fabs(h[k])) k = v;
        if (std::fabs(h[k]) < 1e-13) return {false, {}};

        std::vector<Row> sub;
        sub.reserve(i);
        std::vector<int> sub_vars;
        for (int v : vars)
            if (v != k) sub_vars.push_back(v);
        for (std::size_t j = 0; j < i; ++j) {
            Row r = rows[j];
            const double f = r[k] / h[k];
            for (int v = 0; v < 3; ++v) r[v] -= f * h[v];
            r[3] -= f * h[3];
            r[k] = 0.0;
            const double n = active_norm(r, sub_vars);
            if (n <= 1e-13) {
                if (r[3] < -1e-9) return {false, {}};
                continue;
            }
            for (double& x : r) x /= n;
            sub.push_back(r);
        }
        std::array<double, 3> sub_obj = obj;
        {
            const double f = obj[k] / h[k];
            for (int v = 0; v < 3; ++v) sub_obj[v] -= f * h[v];
            sub_obj[k] = 0.0;
        }
        const RecResult sr = solve_rec(std::move(sub), sub_obj, sub_vars);
        if (!sr.feasible) return {false, {}};
        res.x = sr.x;
        double xk = h[3];
        for (int v : sub_vars) xk -= h[v] * res.x[v];
        res.x[k] = xk / h[k];
    }
    return res;
}

inline bool solve_square(const std::vector<Row>& rows, const std::vector<int>& idx, int d,
                         std::array<double, 3>& x) {
    // Gaussian elimination with partial pivoting on a d x d system.
    double m[3][4] = {};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[i][j] = rows[idx[i]][j];
        m[i][3] = rows[idx[i]][3];
    }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12) return false;
        if (piv != col)
            for (int j = 0; j <= d; ++j) std::swap(m[piv][j], m[col][j]);
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int j = 0; j <= d; ++j) m[r][j] -= f * m[col][j];
        }
    }
    x = {0, 0, 0};
    for (int i = 0; i < d; ++i) x[i] = m[i][3] / m[i][i];
    return true;
}

}  // namespace lpdetail

// Deterministic vertex-enumeration solver; exponential in the constraint
// count, used as oracle and as fallback on degenerate inputs.
inline LpSolution solve_by_enumeration(const LinearProgram& lp) {
    using lpdetail::Row;
    const int d = lp.num_vars;
    std::vector<Row> rows;
    for (const LpConstraint& c : lp.constraints)
        rows.push_back({c.coeff[0], c.coeff[1], c.coeff[2], c.rhs});
    for (int v = 0; v < d; ++v) {
        Row r{0, 0, 0, lpdetail::kBox};
        r[v] = 1;
        rows.push_back(r);
        r[v] = -1;
        rows.push_back(r);
    }
    const int n = static_cast<int>(rows.size());

    LpSolution best;
    best.status = LpStatus::Infeasible;
    auto consider = [&](const std::array<double, 3>& x) {
        double xs = 1.0;
        for (int v = 0; v < d; ++v) xs = std::max(xs, std::fabs(x[v]));
        for (const Row& r : rows) {
            double s = -r[3];
            for (int v = 0; v < d; ++v) s += r[v] * x[v];
            if (s > 1e-7 * xs) return;
        }
        double val = 0;
        for (int v = 0; v < d; ++v) val += lp.objective[v] * x[v];
        if (best.status == LpStatus::Infeasible || val < best.value - 1e-12 ||
            (std::fabs(val - best.value) <= 1e-12 &&
             std::lexicographical_compare(x.begin(), x.begin() + d, best.point.begin(),
                                          best.point.begin() + d))) {
            best.status = LpStatus::Optimal;
            best.value = val;
            best.point = x;
        }
    };

    std::array<double, 3> x;
    std::vector<int> idx(d);
    if (d == 1) {
        for (int i = 0; i < n; ++i) {
            idx = {i};
            if (lpdetail::solve_square(rows, idx, 1, x)) consider(x);
        }
    } else if (d == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                idx = {i, j};
                if (lpdetail::solve_square(rows, idx, 2, x)) consider(x);
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    idx = {i, j, k};
                    if (lpdetail::solve_square(rows, idx, 3, x)) consider(x);
                }
    }
    if (best.status == LpStatus::Optimal) {
        double xs = 1.0;
        for (int v = 0; v < d; ++v) xs = std::max(xs, std::fabs(best.point[v]));
        if (xs > 0.99 * lpdetail::kBox) best.status = LpStatus::Unbounded;
    }
    return best;
}

namespace lpdetail {

inline void fill_tight_set(const LinearProgram& lp, LpSolution& sol) {
    sol.tight_set.clear();
    double xs = 1.0;
    for (int v = 0; v < lp.num_vars; ++v) xs = std::max(xs, std::fabs(sol.point[v]));
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const LpConstraint& c = lp.constraints[i];
        double nrm = 0, s = -c.rhs;
        for (int v = 0; v < lp.num_vars; ++v) {
            s += c.coeff[v] * sol.point[v];
            nrm += c.coeff[v] * c.coeff[v];
        }
        nrm = std::max(std::sqrt(nrm), 1e-30);
        if (std::fabs(s) / nrm <= 1e-9 * xs) sol.tight_set.push_back(static_cast<int>(i));
    }
}

// Nonnegative multipliers on <= num_vars tight constraints reproducing the
// objective: obj + sum lambda_j a_j = 0.
inline bool recover_dual(const LinearProgram& lp, LpSolution& sol) {
    const int d = lp.num_vars;
    double cnorm = 1.0;
    for (int v = 0; v < d; ++v) cnorm = std::max(cnorm, std::fabs(lp.objective[v]));

    std::vector<int> tight = sol.tight_set;
    if (tight.size() > 32) tight.resize(32);
    const int m = static_cast<int>(tight.size());

    auto try_subset = [&](const std::vector<int>& sub) -> bool {
        const int k = static_cast<int>(sub.size());
        // Solve (A^T A) lambda = -A^T c in k unknowns, A columns = a_j.
        double ata[3][3] = {}, atc[3] = {};
        for (int i = 0; i < k; ++i) {
            const auto& ai = lp.constraints[sub[i]].coeff;
            for (int j = 0; j < k; ++j) {
                const auto& aj = lp.constraints[sub[j]].coeff;
                for (int v = 0; v < d; ++v) ata[i][j] += ai[v] * aj[v];
            }
            for (int v = 0; v < d; ++v) atc[i] -= ai[v] * lp.objective[v];
        }
        // Gaussian elimination, k <= 3.
        double mrow[3][4];
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) mrow[i][j] = ata[i][j];
            mrow[i][3] = atc[i];
        }
        for (int col = 0; col < k; ++col) {
            int piv = col;
            for (int r = col + 1; r < k; ++r)
                if (std::fabs(mrow[r][col]) > std::fabs(mrow[piv][col])) piv = r;
            if (std::fabs(mrow[piv][col]) < 1e-14) return false;
            if (piv != col)
                for (int j = 0; j <= k; ++j) std::swap(mrow[piv][j], mrow[col][j]);
            for (int r = 0; r < k; ++r) {
                if (r == col) continue;
                const double f = mrow[r][col] / mrow[col][col];
                for (int j = 0; j <= k; ++j) mrow[r][j] -= f * mrow[col][j];
            }
        }
        std::array<double, 3> lam{0, 0, 0};
        for (int i = 0; i < k; ++i) lam[i] = mrow[i][3] / mrow[i][i];
        for (int i = 0; i < k; ++i)
            if (lam[i] < -1e-10) return false;
        std::array<double, 3> resid = lp.objective;
        for (int i = 0; i < k; ++i)
            for (int v = 0; v < d; ++v) resid[v] += lam[i] * lp.constraints[sub[i]].coeff[v];
        double rn = 0;
        for (int v = 0; v < d; ++v) rn = std::max(rn, std::fabs(resid[v]));
        if (rn > 1e-8 * cnorm) return false;
        sol.dual.clear();
        for (int i = 0; i < k; ++i)
            if (lam[i] > 1e-12) sol.dual.emplace_back(sub[i], lam[i]);
        return true;
    };

    for (int i = 0; i < m; ++i)
        if (try_subset({tight[i]})) return true;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (try_subset({tight[i], tight[j]})) return true;
    if (d >= 3)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    if (try_subset({tight[i], tight[j], tight[k]})) return true;
    return false;
}

inline bool feasible_at(const LinearProgram& lp, const std::array<double, 3>& x) {
    double xs = 1.0;
    for (int v = 0; v < lp.num_vars; ++v) xs = std::max(xs, std::fabs(x[v]));
    for (const LpConstraint& c : lp.constraints) {
        double nrm = 0, s = -c.rhs;
        for (int v = 0; v < lp.num_vars; ++v) {
            s += c.coeff[v] * x[v];
            nrm += c.coeff[v] * c.coeff[v];
        }
        nrm = std::max(std::sqrt(nrm), 1e-30);
        if (s / nrm > 1e-9 * xs) return false;
    }
    return true;
}

}  // namespace lpdetail

// Optimal basic solution by Seidel-style randomized incremental LP with a
// fixed internal seed (identical input gives bit-identical output). Falls
// back to deterministic vertex enumeration when the incremental solution
// fails verification on a small instance.
inline LpSolution solve(const LinearProgram& lp) {
    using lpdetail::Row;
    const int d = lp.num_vars;
    const std::size_t n = lp.constraints.size();

    for (int attempt = 0; attempt < 3; ++attempt) {
        // Box rows first, then user rows in a seeded Fisher-Yates order.
        std::vector<Row> rows;
        rows.reserve(n + 2 * d);
        for (int v = 0; v < d; ++v) {
            Row r{0, 0, 0, lpdetail::kBox};
            r[v] = 1;
            rows.push_back(r);
            r[v] = -1;
            rows.push_back(r);
        }
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::uint64_t rng = 0x8BADF00DULL + 0x1000 * attempt;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = lpdetail::splitmix(rng) % i;
            std::swap(order[i - 1], order[j]);
        }
        bool bad_row = false;
        for (std::size_t i : order) {
            const LpConstraint& c = lp.constraints[i];
            Row r{c.coeff[0], c.coeff[1], c.coeff[2], c.rhs};
            double nrm = 0;
            for (int v = 0; v < d; ++v) nrm += r[v] * r[v];
            nrm = std::sqrt(nrm);
            if (nrm <= 1e-13) {
                if (c.rhs < -1e-12) bad_row = true;  // 0 <= negative
                continue;
            }
            for (double& x : r) x /= nrm;
            rows.push_back(r);
        }

        LpSolution sol;
        if (bad_row) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        std::vector<int> vars(d);
        for (int v = 0; v < d; ++v) vars[v] = v;
        const lpdetail::RecResult rr = lpdetail::solve_rec(rows, lp.objective, vars);
        if (!rr.feasible) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        sol.status = LpStatus::Optimal;
        sol.point = rr.x;
        sol.value = 0;
        for (int v = 0; v < d; ++v) sol.value += lp.objective[v] * rr.x[v];
        double xs = 0;
        for (int v = 0; v < d; ++v) xs = std::max(xs, std::fabs(rr.x[v]));
        if (xs > 0.99 * lpdetail::kBox) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        if (!lpdetail::feasible_at(lp, sol.point)) continue;
        lpdetail::fill_tight_set(lp, sol);
        if (!lpdetail::recover_dual(lp, sol)) continue;
        return sol;
    }
    if (n <= 150) return solve_by_enumeration(lp);
    // Large degenerate instance: accept the incremental answer as-is.
    std::vector<Row> rows;
    LpSolution sol;
    std::vector<int> vars(d);
    for (int v = 0; v < d; ++v) vars[v] = v;
    for (int v = 0; v < d; ++v) {
        Row r{0, 0, 0, lpdetail::kBox};
        r[v] = 1;
        rows.push_back(r);
        r[v] = -1;
        rows.push_back(r);
    }
    for (const LpConstraint& c : lp.constraints)
        rows.push_back({c.coeff[0], c.coeff[1], c.coeff[2], c.rhs});
    const lpdetail::RecResult rr = lpdetail::solve_rec(rows, lp.objective, vars);
    sol.status = rr.feasible ? LpStatus::Optimal : LpStatus::Infeasible;
    sol.point = rr.x;
    sol.value = 0;
    for (int v = 0; v < d; ++v) sol.value += lp.objective[v] * rr.x[v];
    if (sol.status == LpStatus::Optimal) {
        lpdetail::fill_tight_set(lp, sol);
        lpdetail::recover_dual(lp, sol);
    }
    return sol;
}

}  // namespace asymgeo
