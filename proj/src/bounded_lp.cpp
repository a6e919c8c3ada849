#include "bounded_lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace refhouse {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

LpPoint find_feasible_point(const BoundedLp& lp, std::uint64_t pivot_limit) {
    const int m = lp.rows;
    const int n = static_cast<int>(lp.columns.size());
    const int total = n + m;  // structural columns, then one artificial per row

    std::vector<double> lo(total), hi(total), x(total);
    for (int j = 0; j < n; ++j) {
        lo[j] = static_cast<double>(lp.lower[j]);
        hi[j] = static_cast<double>(lp.upper[j]);
        x[j] = lo[j];
    }
    std::vector<double> residual(lp.rhs.begin(), lp.rhs.end());
    for (int j = 0; j < n; ++j)
        for (const auto& e : lp.columns[j]) residual[e.row] -= e.coefficient * x[j];
    std::vector<double> sign(m);
    std::vector<int> basis(m);
    std::vector<int> position(total, -1);
    for (int r = 0; r < m; ++r) {
        sign[r] = residual[r] >= 0 ? 1.0 : -1.0;
        lo[n + r] = 0;
        hi[n + r] = kInf;
        x[n + r] = std::abs(residual[r]);
        basis[r] = n + r;
        position[n + r] = r;
    }
    std::vector<char> at_upper(total, 0);

    auto column = [&](int j, Eigen::VectorXd& out) {
        out.setZero(m);
        if (j < n)
            for (const auto& e : lp.columns[j]) out[e.row] += e.coefficient;
        else
            out[j - n] = sign[j - n];
    };

    LpPoint result;
    Eigen::MatrixXd basis_matrix(m, m);
    Eigen::VectorXd a(m);
    while (true) {
        for (int k = 0; k < m; ++k) {
            column(basis[k], a);
            basis_matrix.col(k) = a;
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);

        // Basic values from the nonbasic ones.
        Eigen::VectorXd rhs(m);
        for (int r = 0; r < m; ++r) rhs[r] = static_cast<double>(lp.rhs[r]);
        for (int j = 0; j < total; ++j) {
            if (position[j] >= 0 || x[j] == 0) continue;
            if (j < n)
                for (const auto& e : lp.columns[j]) rhs[e.row] -= e.coefficient * x[j];
            else
                rhs[j - n] -= sign[j - n] * x[j];
        }
        const Eigen::VectorXd xb = lu.solve(rhs);
        double infeasibility = 0;
        Eigen::VectorXd cb(m);
        for (int k = 0; k < m; ++k) {
            x[basis[k]] = xb[k];
            cb[k] = basis[k] >= n ? 1.0 : 0.0;
            if (basis[k] >= n) infeasibility += xb[k];
        }
        if (infeasibility < 1e-7) {
            result.status = LpPoint::Status::feasible;
            result.x.assign(x.begin(), x.begin() + n);
            return result;
        }
        const Eigen::VectorXd pi = lu.transpose().solve(cb);

        // Bland: the first improving column enters.
        int entering = -1;
        double direction = 0;
        for (int j = 0; j < total && entering < 0; ++j) {
            if (position[j] >= 0 || hi[j] - lo[j] < kEps) continue;
            double reduced = j >= n ? 1.0 : 0.0;
            if (j < n)
                for (const auto& e : lp.columns[j]) reduced -= pi[e.row] * e.coefficient;
            else
                reduced -= pi[j - n] * sign[j - n];
            if (!at_upper[j] && reduced < -kEps) entering = j, direction = 1;
            else if (at_upper[j] && reduced > kEps) entering = j, direction = -1;
        }
        if (entering < 0) {
            result.status = LpPoint::Status::infeasible;
            result.farkas.assign(pi.data(), pi.data() + m);
            return result;
        }
        if (++result.pivots > pivot_limit) return result;

        column(entering, a);
        const Eigen::VectorXd alpha = lu.solve(a);
        double step = hi[entering] - lo[entering];
        int leaving = -1;
        bool leaves_at_upper = false;
        for (int k = 0; k < m; ++k) {
            const double delta = direction * alpha[k];
            const int b = basis[k];
            double limit;
            bool to_upper;
            if (delta > kEps) {
                limit = (x[b] - lo[b]) / delta;
                to_upper = false;
            } else if (delta < -kEps) {
                limit = (hi[b] - x[b]) / -delta;
                to_upper = true;
            } else {
                continue;
            }
            limit = std::max(limit, 0.0);
            if (limit < step - kEps || (leaving >= 0 && limit < step + kEps && b < basis[leaving])) {
                step = limit;
                leaving = k;
                leaves_at_upper = to_upper;
            }
        }
        if (leaving < 0) {
            // The entering variable runs to its other bound.
            at_upper[entering] = !at_upper[entering];
            x[entering] = at_upper[entering] ? hi[entering] : lo[entering];
            continue;
        }
        const int out = basis[leaving];
        position[out] = -1;
        at_upper[out] = leaves_at_upper;
        x[out] = leaves_at_upper ? hi[out] : lo[out];
        if (out >= n) hi[out] = x[out] = 0;  // artificials never return
        x[entering] += direction * step;
        basis[leaving] = entering;
        position[entering] = leaving;
        at_upper[entering] = 0;
    }
}

bool certifies_infeasible(const BoundedLp& lp, const std::vector<double>& multipliers) {
    double largest = 0;
    for (double y : multipliers) largest = std::max(largest, std::abs(y));
    if (largest == 0 || !std::isfinite(largest)) return false;
    const double scale = static_cast<double>(1L << 30) / largest;
    std::vector<long> y(multipliers.size());
    for (std::size_t r = 0; r < y.size(); ++r) y[r] = std::lround(multipliers[r] * scale);

    __int128 target = 0, highest = 0, lowest = 0;
    for (int r = 0; r < lp.rows; ++r) target += static_cast<__int128>(y[r]) * lp.rhs[r];
    for (std::size_t j = 0; j < lp.columns.size(); ++j) {
        __int128 c = 0;
        for (const auto& e : lp.columns[j]) c += static_cast<__int128>(y[e.row]) * e.coefficient;
        highest += c * (c > 0 ? lp.upper[j] : lp.lower[j]);
        lowest += c * (c > 0 ? lp.lower[j] : lp.upper[j]);
    }
    return highest < target || lowest > target;
}

} // namespace refhouse
