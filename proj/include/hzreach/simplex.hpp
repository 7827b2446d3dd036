#ifndef HZREACH_SIMPLEX_HPP_
#define HZREACH_SIMPLEX_HPP_

#include <vector>

#include "hzreach/matrix.hpp"

namespace hzreach {

enum class LpStatus { Optimal, Infeasible, IterationLimit };

/// min obj' x  subject to  A x = rhs,  lo <= x <= hi  (all bounds finite).
struct LpProblem
{
    Mat A;
    Vec rhs;
    Vec lo;
    Vec hi;
    Vec obj;
};

struct LpResult
{
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    Vec x;
    long iterations = 0;
};

/**
 * Dense bounded-variable revised simplex with an explicitly maintained
 * basis inverse. Feasibility is restored by a composite phase 1 (infeasible
 * basics priced by their violation direction); artificial columns fixed at
 * zero provide the initial basis. Dantzig pricing with lowest-index ties,
 * Bland's rule after a run of degenerate pivots.
 *
 * The solver is stateful: bounds, objective, and right-hand side can be
 * modified between solves and the current basis is reused, which keeps
 * reoptimization cheap inside branch-and-bound.
 */
class SimplexSolver
{
  public:
    explicit SimplexSolver(LpProblem p);

    LpResult solve(long max_iters = 50000);

    void set_bounds(Index j, double lo, double hi);
    void set_rhs(const Vec& rhs);
    void set_rhs_entry(Index i, double v);
    void set_objective(const Vec& obj);

    double lower_bound(Index j) const { return lo_[j]; }
    double upper_bound(Index j) const { return hi_[j]; }
    Index num_vars() const { return n_; }

  private:
    // Variables 0..n-1 are structural, n..n+m-1 artificial (fixed at 0).
    Index m_ = 0, n_ = 0, total_ = 0;
    Mat A_;  // m x (n + m), artificial block is the identity
    Vec rhs_, lo_, hi_, obj_;

    std::vector<Index> basis_;       // m entries
    std::vector<int> position_;      // var -> basis row, or -1
    std::vector<int> at_upper_;      // nonbasic rest position (0 = lower)
    Mat binv_;
    Vec xb_;                         // basic variable values
    long pivots_since_refactor_ = 0;
    bool basis_valid_ = false;

    void reset_basis();
    bool refactor();
    void compute_basic_values();
    double infeasibility() const;
    bool price(const Vec& costs, bool phase1, bool bland, Index& enter,
               int& dir) const;
    bool iterate(const Vec& costs, bool phase1, long max_iters, long& iters,
                 bool& hit_limit);
    Vec full_solution() const;
};

}  // namespace hzreach

#endif  // HZREACH_SIMPLEX_HPP_
