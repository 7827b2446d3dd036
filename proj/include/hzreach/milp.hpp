#ifndef HZREACH_MILP_HPP_
#define HZREACH_MILP_HPP_

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hzreach/hybrid_zonotope.hpp"
#include "hzreach/simplex.hpp"

namespace hzreach {

enum class MilpStatus { Optimal, Infeasible, IterationLimit };

struct MilpOptions
{
    long max_nodes = 100000;
    long max_lp_iters = 200000;
    double integrality_tol = 1e-6;
    double gap_tol = 1e-6;
    int threads = 1;
    /// Early stop for feasibility-style queries: return as soon as an
    /// incumbent at or below this value is known (minimization sense).
    double stop_below = std::numeric_limits<double>::quiet_NaN();
};

/// LP relaxation plus the index set of variables restricted to {-1, +1}.
/// Binary indices must carry bounds [-1, 1] in the relaxation.
struct MilpProblem
{
    LpProblem lp;
    std::vector<Index> binaries;
    bool maximize = false;
};

struct MilpResult
{
    MilpStatus status = MilpStatus::Infeasible;
    double objective = 0.0;
    Vec assignment;
    long nodes = 0;
};

/// Best-first branch-and-bound: the LP relaxation treats each binary as
/// bounded in [-1, 1]; branching fixes the lowest-index fractional binary
/// to -1 then +1. Node order is (bound, deeper-first, insertion index), so
/// results do not depend on the worker count.
MilpResult solve(const MilpProblem& p, const MilpOptions& opts = {});

/// Same search on an existing solver (bounds are reset per node); used to
/// reuse factorizations across repeated queries on one constraint matrix.
MilpResult solve_with(SimplexSolver& solver, const std::vector<Index>& binaries,
                      bool maximize, const MilpOptions& opts);

enum class Ternary { False, True, Unknown };

struct EmptinessResult
{
    Ternary empty = Ternary::Unknown;
    double min_inf_norm = std::numeric_limits<double>::quiet_NaN();
    Vec witness;  // a point of Z when nonempty
};

/// Emptiness via min ||xc||_inf subject to the constraint rows; the set is
/// nonempty iff the optimum is <= 1. Node-limit overruns surface as Unknown.
EmptinessResult check_empty_detail(const HybridZonotope& Z,
                                   const MilpOptions& opts = {});

/// Boolean emptiness; throws std::runtime_error on Unknown.
bool check_empty(const HybridZonotope& Z, const MilpOptions& opts = {});

/// Membership of x in Z within tolerance 1e-7 on the appended point rows.
bool contains_point(const HybridZonotope& Z, const Vec& x,
                    const MilpOptions& opts = {});

/// Tight [min, max] of coordinate dim over Z via two MILPs.
/// Throws EmptySetError when Z is empty.
std::pair<double, double> bounding_interval(const HybridZonotope& Z, Index dim,
                                            const MilpOptions& opts = {});

/// bounding_interval over all coordinates.
Box bounding_box(const HybridZonotope& Z, const MilpOptions& opts = {});

struct EmptySetError : std::runtime_error
{
    explicit EmptySetError(const std::string& what) : std::runtime_error(what) {}
};

/// Repeated membership queries against one set. The point coordinates only
/// touch the right-hand side of the appended rows, so the solver and its
/// factorization are kept across queries.
class MembershipOracle
{
  public:
    explicit MembershipOracle(const HybridZonotope& Z, MilpOptions opts = {});
    ~MembershipOracle();
    MembershipOracle(MembershipOracle&&) noexcept;

    bool contains(const Vec& x);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Debug dump in LP text format (objective, rows, bounds; +/-1-restricted
/// variables listed in a trailing General section).
void write_lp_file(const MilpProblem& p, const std::string& path);

}  // namespace hzreach

#endif  // HZREACH_MILP_HPP_
