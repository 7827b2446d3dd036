#include "hzreach/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hzreach {

namespace {
constexpr double kFeasTol = 1e-8;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr long kRefactorPeriod = 256;
constexpr int kBlandTrigger = 60;
}  // namespace

SimplexSolver::SimplexSolver(LpProblem p)
{
    m_ = p.A.rows();
    n_ = p.A.cols();
    total_ = n_ + m_;
    if (p.rhs.size() != m_ || p.lo.size() != n_ || p.hi.size() != n_ ||
        p.obj.size() != n_)
        throw std::invalid_argument("SimplexSolver: inconsistent problem sizes");

    A_ = Mat::Zero(m_, total_);
    A_.leftCols(n_) = p.A;
    A_.rightCols(m_) = Mat::Identity(m_, m_);
    rhs_ = p.rhs;

    lo_ = Vec::Zero(total_);
    hi_ = Vec::Zero(total_);
    lo_.head(n_) = p.lo;
    hi_.head(n_) = p.hi;
    // artificial columns stay fixed at zero; phase 1 drives them out

    obj_ = Vec::Zero(total_);
    obj_.head(n_) = p.obj;

    position_.assign(total_, -1);
    at_upper_.assign(total_, 0);
    basis_.resize(m_);
}

void SimplexSolver::reset_basis()
{
    position_.assign(total_, -1);
    for (Index j = 0; j < n_; ++j)
        at_upper_[j] = std::abs(hi_[j]) < std::abs(lo_[j]) ? 1 : 0;
    for (Index i = 0; i < m_; ++i)
    {
        basis_[i] = n_ + i;
        position_[n_ + i] = static_cast<int>(i);
    }
    binv_ = Mat::Identity(m_, m_);
    pivots_since_refactor_ = 0;
    compute_basic_values();
    basis_valid_ = true;
}

bool SimplexSolver::refactor()
{
    Mat B(m_, m_);
    for (Index i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const double det = std::abs(lu.determinant());
    if (!(det > 1e-300) || !std::isfinite(det)) return false;
    Eigen::MatrixXd inv = lu.inverse();
    if (!inv.allFinite()) return false;
    binv_ = inv;
    pivots_since_refactor_ = 0;
    return true;
}

void SimplexSolver::compute_basic_values()
{
    Vec r = rhs_;
    for (Index j = 0; j < total_; ++j)
    {
        if (position_[j] >= 0) continue;
        const double v = at_upper_[j] ? hi_[j] : lo_[j];
        if (v != 0.0) r -= A_.col(j) * v;
    }
    xb_ = binv_ * r;
}

double SimplexSolver::infeasibility() const
{
    double total = 0.0;
    for (Index i = 0; i < m_; ++i)
    {
        const Index v = basis_[i];
        if (xb_[i] < lo_[v]) total += lo_[v] - xb_[i];
        else if (xb_[i] > hi_[v]) total += xb_[i] - hi_[v];
    }
    return total;
}

bool SimplexSolver::price(const Vec& costs, bool phase1, bool bland,
                          Index& enter, int& dir) const
{
    Vec cb(m_);
    for (Index i = 0; i < m_; ++i) cb[i] = costs[basis_[i]];
    Vec y = binv_.transpose() * cb;

    enter = -1;
    dir = 0;
    (void)phase1;
    double best = kCostTol;
    for (Index j = 0; j < total_; ++j)
    {
        if (position_[j] >= 0) continue;
        if (hi_[j] - lo_[j] < 1e-12) continue;  // fixed, cannot move
        const double d = costs[j] - y.dot(A_.col(j));
        double score = 0.0;
        int cand_dir = 0;
        if (!at_upper_[j] && d < -best)
        {
            score = -d;
            cand_dir = +1;
        }
        else if (at_upper_[j] && d > best)
        {
            score = d;
            cand_dir = -1;
        }
        if (cand_dir != 0)
        {
            if (bland)
            {
                enter = j;
                dir = cand_dir;
                return true;
            }
            best = score;
            enter = j;
            dir = cand_dir;
        }
    }
    return enter >= 0;
}

bool SimplexSolver::iterate(const Vec& costs_in, bool phase1, long max_iters,
                            long& iters, bool& hit_limit)
{
    int degenerate_run = 0;
    Vec costs = costs_in;

    while (true)
    {
        if (iters >= max_iters)
        {
            hit_limit = true;
            return false;
        }

        if (phase1)
        {
            if (infeasibility() <= kFeasTol) return true;
            // re-price violated basics every iteration
            costs.setZero();
            for (Index i = 0; i < m_; ++i)
            {
                const Index v = basis_[i];
                if (xb_[i] < lo_[v] - kFeasTol) costs[v] = -1.0;
                else if (xb_[i] > hi_[v] + kFeasTol) costs[v] = 1.0;
            }
        }

        const bool bland = degenerate_run > kBlandTrigger;
        Index enter = -1;
        int dir = 0;
        if (!price(costs, phase1, bland, enter, dir))
        {
            if (phase1 && infeasibility() > kFeasTol) return false;
            return true;  // optimal
        }

        Vec w = binv_ * A_.col(enter);

        // Blocking step for x_enter moving dir * t, t >= 0.
        double step = hi_[enter] - lo_[enter];  // bound flip
        Index leave_row = -1;
        int leave_to_upper = 0;
        double leave_weight = 0.0;

        for (Index i = 0; i < m_; ++i)
        {
            const Index v = basis_[i];
            const double rate = -static_cast<double>(dir) * w[i];
            if (std::abs(rate) < kPivotTol) continue;

            double t = std::numeric_limits<double>::infinity();
            int to_upper = 0;
            const bool below = xb_[i] < lo_[v] - kFeasTol;
            const bool above = xb_[i] > hi_[v] + kFeasTol;
            if (phase1 && below)
            {
                if (rate > 0.0)
                {
                    t = (lo_[v] - xb_[i]) / rate;
                    to_upper = 0;
                }
            }
            else if (phase1 && above)
            {
                if (rate < 0.0)
                {
                    t = (hi_[v] - xb_[i]) / rate;
                    to_upper = 1;
                }
            }
            else if (rate > 0.0)
            {
                t = (hi_[v] - xb_[i]) / rate;
                to_upper = 1;
            }
            else
            {
                t = (lo_[v] - xb_[i]) / rate;
                to_upper = 0;
            }
            if (!std::isfinite(t)) continue;
            t = std::max(t, 0.0);
            if (t >= step + 1e-12) continue;

            bool take;
            if (t < step - 1e-12 || leave_row < 0)
            {
                take = true;  // strictly tighter, or first blocker at the flip tie
            }
            else if (bland)
            {
                take = v < basis_[leave_row];
            }
            else
            {
                const double wv = std::abs(w[i]);
                take = wv > leave_weight + 1e-15 ||
                       (wv > leave_weight - 1e-15 && v < basis_[leave_row]);
            }
            if (take)
            {
                step = std::min(step, t);
                leave_row = i;
                leave_to_upper = to_upper;
                leave_weight = std::abs(w[i]);
            }
        }

        step = std::max(step, 0.0);
        degenerate_run = step < 1e-11 ? degenerate_run + 1 : 0;

        // apply the move
        if (step > 0.0) xb_ -= static_cast<double>(dir) * step * w;

        if (leave_row < 0)
        {
            // pure bound flip
            at_upper_[enter] ^= 1;
        }
        else
        {
            const Index leaving = basis_[leave_row];
            const double enter_start = at_upper_[enter] ? hi_[enter] : lo_[enter];
            position_[leaving] = -1;
            at_upper_[leaving] = leave_to_upper;
            basis_[leave_row] = enter;
            position_[enter] = static_cast<int>(leave_row);
            xb_[leave_row] = enter_start + static_cast<double>(dir) * step;

            const double piv = w[leave_row];
            if (std::abs(piv) < kPivotTol)
            {
                if (!refactor()) reset_basis();
                compute_basic_values();
            }
            else
            {
                binv_.row(leave_row) /= piv;
                for (Index i = 0; i < m_; ++i)
                {
                    if (i == leave_row) continue;
                    const double f = w[i];
                    if (f != 0.0) binv_.row(i) -= f * binv_.row(leave_row);
                }
                if (++pivots_since_refactor_ >= kRefactorPeriod)
                {
                    if (!refactor()) reset_basis();
                    compute_basic_values();
                }
            }
        }
        ++iters;
    }
}

Vec SimplexSolver::full_solution() const
{
    Vec x(total_);
    for (Index j = 0; j < total_; ++j)
        x[j] = position_[j] >= 0 ? xb_[position_[j]]
                                 : (at_upper_[j] ? hi_[j] : lo_[j]);
    return x.head(n_);
}

LpResult SimplexSolver::solve(long max_iters)
{
    LpResult res;
    if (!basis_valid_) reset_basis();
    else compute_basic_values();

    long iters = 0;
    bool hit_limit = false;

    bool feasible = iterate(Vec::Zero(total_), true, max_iters, iters, hit_limit);
    if (!feasible && !hit_limit)
    {
        // confirm on a fresh factorization before declaring infeasible
        if (refactor())
        {
            compute_basic_values();
            feasible = iterate(Vec::Zero(total_), true, max_iters, iters, hit_limit);
        }
    }
    if (hit_limit)
    {
        res.status = LpStatus::IterationLimit;
        res.iterations = iters;
        return res;
    }
    if (!feasible)
    {
        res.status = LpStatus::Infeasible;
        res.iterations = iters;
        return res;
    }

    const bool optimal = iterate(obj_, false, max_iters, iters, hit_limit);
    res.iterations = iters;
    if (!optimal)
    {
        res.status = LpStatus::IterationLimit;
        return res;
    }

    Vec x = full_solution();
    // guard against drift of the maintained inverse
    double resid =
        m_ == 0 ? 0.0 : (A_.leftCols(n_) * x - rhs_).cwiseAbs().maxCoeff();
    for (Index i = 0; i < m_; ++i)
    {
        const Index v = basis_[i];
        if (v >= n_) resid = std::max(resid, std::abs(xb_[i]));
    }
    if (resid > 1e-7)
    {
        if (refactor())
        {
            compute_basic_values();
            long extra = 0;
            if (iterate(Vec::Zero(total_), true, max_iters, extra, hit_limit) &&
                iterate(obj_, false, max_iters, extra, hit_limit))
            {
                x = full_solution();
            }
            else if (!hit_limit)
            {
                res.status = LpStatus::Infeasible;
                return res;
            }
            else
            {
                res.status = LpStatus::IterationLimit;
                return res;
            }
            res.iterations += extra;
        }
    }

    res.status = LpStatus::Optimal;
    res.x = x;
    res.objective = obj_.head(n_).dot(x);
    return res;
}

void SimplexSolver::set_bounds(Index j, double lo, double hi)
{
    if (j < 0 || j >= n_) throw std::invalid_argument("set_bounds: bad index");
    lo_[j] = lo;
    hi_[j] = hi;
}

void SimplexSolver::set_rhs(const Vec& rhs)
{
    if (rhs.size() != m_) throw std::invalid_argument("set_rhs: bad size");
    rhs_ = rhs;
}

void SimplexSolver::set_rhs_entry(Index i, double v)
{
    if (i < 0 || i >= m_) throw std::invalid_argument("set_rhs_entry: bad index");
    rhs_[i] = v;
}

void SimplexSolver::set_objective(const Vec& obj)
{
    if (obj.size() != n_) throw std::invalid_argument("set_objective: bad size");
    obj_.head(n_) = obj;
}

}  // namespace hzreach
