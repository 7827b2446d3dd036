#include "hzreach/milp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <stdexcept>

namespace hzreach {

namespace {

constexpr double kMembershipTol = 1e-7;
constexpr double kBoxBound = 2.0;  // relaxed factor box for emptiness queries

struct Node
{
    double bound;
    int depth;
    long seq;
    std::vector<std::pair<Index, int>> fixings;  // (binary ordinal, -1/+1)
};

struct NodeOrder
{
    bool operator()(const Node& a, const Node& b) const
    {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        if (a.depth != b.depth) return a.depth < b.depth;  // deeper first
        return a.seq > b.seq;                              // then FIFO
    }
};

}  // namespace

MilpResult solve_with(SimplexSolver& solver, const std::vector<Index>& binaries,
                      bool maximize, const MilpOptions& opts)
{
    MilpResult res;
    const double inf = std::numeric_limits<double>::infinity();
    double incumbent = inf;
    Vec best_x;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long seq = 0;
    open.push(Node{-inf, 0, seq++, {}});

    const bool has_stop = std::isfinite(opts.stop_below);
    bool limit_hit = false;
    bool early_stop = false;

    while (!open.empty())
    {
        Node node = open.top();
        open.pop();

        if (node.bound >= incumbent - opts.gap_tol) break;  // best-bound exhausted
        if (res.nodes >= opts.max_nodes)
        {
            limit_hit = true;
            break;
        }
        ++res.nodes;

        // node bounds: all binaries free, then fixings applied
        for (Index ord = 0; ord < static_cast<Index>(binaries.size()); ++ord)
            solver.set_bounds(binaries[ord], -1.0, 1.0);
        for (auto [ord, val] : node.fixings)
            solver.set_bounds(binaries[ord], val, val);

        LpResult lp = solver.solve(opts.max_lp_iters);
        if (lp.status == LpStatus::IterationLimit)
        {
            limit_hit = true;
            break;
        }
        if (lp.status == LpStatus::Infeasible) continue;
        if (lp.objective >= incumbent - opts.gap_tol) continue;

        Index frac = -1;
        for (Index ord = 0; ord < static_cast<Index>(binaries.size()); ++ord)
        {
            const double v = lp.x[binaries[ord]];
            if (std::abs(std::abs(v) - 1.0) > opts.integrality_tol)
            {
                frac = ord;
                break;
            }
        }

        if (frac < 0)
        {
            incumbent = lp.objective;
            best_x = lp.x;
            if (has_stop && incumbent <= opts.stop_below)
            {
                early_stop = true;
                break;
            }
            continue;
        }

        Node lo{lp.objective, node.depth + 1, 0, node.fixings};
        lo.fixings.emplace_back(frac, -1);
        lo.seq = seq++;
        Node hi{lp.objective, node.depth + 1, 0, node.fixings};
        hi.fixings.emplace_back(frac, +1);
        hi.seq = seq++;
        open.push(std::move(lo));
        open.push(std::move(hi));
    }

    if (std::isfinite(incumbent))
    {
        res.objective = maximize ? -incumbent : incumbent;
        res.assignment = best_x;
        // early stop already certifies the verdict the caller asked for;
        // a node-limit overrun without proof is reported as such
        res.status = (limit_hit && !early_stop) ? MilpStatus::IterationLimit
                                                : MilpStatus::Optimal;
    }
    else
    {
        res.status = limit_hit ? MilpStatus::IterationLimit : MilpStatus::Infeasible;
    }
    return res;
}

MilpResult solve(const MilpProblem& p, const MilpOptions& opts)
{
    LpProblem lp = p.lp;
    if (p.maximize) lp.obj = -lp.obj;
    for (Index j : p.binaries)
    {
        if (j < 0 || j >= lp.A.cols())
            throw std::invalid_argument("solve: binary index out of range");
    }
    SimplexSolver solver(std::move(lp));
    return solve_with(solver, p.binaries, p.maximize, opts);
}

namespace {

// min t  s.t.  Ac xc + Ab xb = b,  -t <= xc_i <= t  (slack form),
// xc in [-kBoxBound, kBoxBound], t in [0, kBoxBound].
MilpProblem emptiness_milp(const HybridZonotope& Z)
{
    const Index ng = Z.num_cont_gens();
    const Index nb = Z.num_bin_gens();
    const Index nc = Z.num_constraints();
    const Index nvar = ng + nb + 1 + 2 * ng;  // xc, xb, t, slacks
    const Index nrow = nc + 2 * ng;

    MilpProblem p;
    p.lp.A = Mat::Zero(nrow, nvar);
    p.lp.A.block(0, 0, nc, ng) = Z.Ac();
    p.lp.A.block(0, ng, nc, nb) = Z.Ab();
    const Index t_col = ng + nb;
    for (Index i = 0; i < ng; ++i)
    {
        // xc_i - t + s_i = 0  and  -xc_i - t + s'_i = 0
        p.lp.A(nc + i, i) = 1.0;
        p.lp.A(nc + i, t_col) = -1.0;
        p.lp.A(nc + i, t_col + 1 + i) = 1.0;
        p.lp.A(nc + ng + i, i) = -1.0;
        p.lp.A(nc + ng + i, t_col) = -1.0;
        p.lp.A(nc + ng + i, t_col + 1 + ng + i) = 1.0;
    }
    p.lp.rhs = Vec::Zero(nrow);
    p.lp.rhs.head(nc) = Z.b();

    p.lp.lo = Vec::Zero(nvar);
    p.lp.hi = Vec::Zero(nvar);
    p.lp.lo.head(ng).setConstant(-kBoxBound);
    p.lp.hi.head(ng).setConstant(kBoxBound);
    p.lp.lo.segment(ng, nb).setConstant(-1.0);
    p.lp.hi.segment(ng, nb).setConstant(1.0);
    p.lp.lo[t_col] = 0.0;
    p.lp.hi[t_col] = kBoxBound;
    p.lp.lo.tail(2 * ng).setConstant(0.0);
    p.lp.hi.tail(2 * ng).setConstant(2.0 * kBoxBound);

    p.lp.obj = Vec::Zero(nvar);
    p.lp.obj[t_col] = 1.0;

    for (Index k = 0; k < nb; ++k) p.binaries.push_back(ng + k);
    return p;
}

}  // namespace

EmptinessResult check_empty_detail(const HybridZonotope& Z,
                                   const MilpOptions& opts)
{
    EmptinessResult out;
    MilpProblem p = emptiness_milp(Z);
    MilpOptions o = opts;
    if (!std::isfinite(o.stop_below)) o.stop_below = 1.0;
    MilpResult r = solve(p, o);

    if (r.status == MilpStatus::IterationLimit)
    {
        out.empty = Ternary::Unknown;
        return out;
    }
    if (r.status == MilpStatus::Infeasible)
    {
        out.empty = Ternary::True;
        return out;
    }
    out.min_inf_norm = r.objective;
    const double thresh = 1.0 + opts.gap_tol + kMembershipTol;
    if (r.objective <= thresh)
    {
        out.empty = Ternary::False;
        const Index ng = Z.num_cont_gens();
        out.witness = Z.eval(r.assignment.head(ng),
                             r.assignment.segment(ng, Z.num_bin_gens()));
    }
    else
    {
        out.empty = Ternary::True;
    }
    return out;
}

bool check_empty(const HybridZonotope& Z, const MilpOptions& opts)
{
    EmptinessResult r = check_empty_detail(Z, opts);
    if (r.empty == Ternary::Unknown)
        throw std::runtime_error("check_empty: node limit reached (unknown)");
    return r.empty == Ternary::True;
}

namespace {

// Membership system: the emptiness MILP of Z with rows
// Gc xc + Gb xb + e = x - c appended, |e_k| <= membership tolerance.
struct MembershipSystem
{
    MilpProblem problem;
    Index point_row0 = 0;  // rows whose rhs carries x - c
};

MembershipSystem membership_milp(const HybridZonotope& Z)
{
    MilpProblem base = emptiness_milp(Z);
    const Index n = Z.dim();
    const Index ng = Z.num_cont_gens();
    const Index nb = Z.num_bin_gens();
    const Index old_rows = base.lp.A.rows();
    const Index old_vars = base.lp.A.cols();

    MembershipSystem sys;
    sys.point_row0 = old_rows;
    sys.problem.binaries = base.binaries;

    LpProblem& lp = sys.problem.lp;
    lp.A = Mat::Zero(old_rows + n, old_vars + n);
    lp.A.block(0, 0, old_rows, old_vars) = base.lp.A;
    lp.A.block(old_rows, 0, n, ng) = Z.Gc();
    lp.A.block(old_rows, ng, n, nb) = Z.Gb();
    lp.A.block(old_rows, old_vars, n, n) = Mat::Identity(n, n);

    lp.rhs = Vec::Zero(old_rows + n);
    lp.rhs.head(old_rows) = base.lp.rhs;

    lp.lo = Vec::Zero(old_vars + n);
    lp.hi = Vec::Zero(old_vars + n);
    lp.lo.head(old_vars) = base.lp.lo;
    lp.hi.head(old_vars) = base.lp.hi;
    lp.lo.tail(n).setConstant(-kMembershipTol);
    lp.hi.tail(n).setConstant(kMembershipTol);

    lp.obj = Vec::Zero(old_vars + n);
    lp.obj.head(old_vars) = base.lp.obj;
    return sys;
}

}  // namespace

struct MembershipOracle::Impl
{
    HybridZonotope set;
    MembershipSystem sys;
    SimplexSolver solver;
    MilpOptions opts;
    Vec hull_lb, hull_ub;

    Impl(const HybridZonotope& Z, MilpOptions o)
        : set(Z), sys(membership_milp(Z)), solver(sys.problem.lp), opts(o)
    {
        if (!std::isfinite(opts.stop_below)) opts.stop_below = 1.0;
        set.interval_hull(hull_lb, hull_ub);
    }
};

MembershipOracle::MembershipOracle(const HybridZonotope& Z, MilpOptions opts)
    : impl_(std::make_unique<Impl>(Z, opts)) {}

MembershipOracle::~MembershipOracle() = default;
MembershipOracle::MembershipOracle(MembershipOracle&&) noexcept = default;

bool MembershipOracle::contains(const Vec& x)
{
    Impl& s = *impl_;
    if (x.size() != s.set.dim())
        throw std::invalid_argument("MembershipOracle: point dimension mismatch");

    // interval-hull fast reject
    for (Index i = 0; i < x.size(); ++i)
        if (x[i] < s.hull_lb[i] - kMembershipTol ||
            x[i] > s.hull_ub[i] + kMembershipTol)
            return false;

    const Vec target = x - s.set.c();
    for (Index i = 0; i < target.size(); ++i)
        s.solver.set_rhs_entry(s.sys.point_row0 + i, target[i]);

    MilpResult r = solve_with(s.solver, s.sys.problem.binaries, false, s.opts);
    if (r.status == MilpStatus::IterationLimit)
        throw std::runtime_error("MembershipOracle: node limit reached");
    if (r.status == MilpStatus::Infeasible) return false;
    return r.objective <= 1.0 + s.opts.gap_tol + kMembershipTol;
}

bool contains_point(const HybridZonotope& Z, const Vec& x,
                    const MilpOptions& opts)
{
    MembershipOracle oracle(Z, opts);
    return oracle.contains(x);
}

std::pair<double, double> bounding_interval(const HybridZonotope& Z, Index dim,
                                            const MilpOptions& opts)
{
    if (dim < 0 || dim >= Z.dim())
        throw std::invalid_argument("bounding_interval: dimension out of range");

    const Index ng = Z.num_cont_gens();
    const Index nb = Z.num_bin_gens();

    MilpProblem p;
    p.lp.A = Mat::Zero(Z.num_constraints(), ng + nb);
    p.lp.A.leftCols(ng) = Z.Ac();
    p.lp.A.rightCols(nb) = Z.Ab();
    p.lp.rhs = Z.b();
    p.lp.lo = -Vec::Ones(ng + nb);
    p.lp.hi = Vec::Ones(ng + nb);
    p.lp.obj = Vec::Zero(ng + nb);
    p.lp.obj.head(ng) = Z.Gc().row(dim).transpose();
    p.lp.obj.tail(nb) = Z.Gb().row(dim).transpose();
    for (Index k = 0; k < nb; ++k) p.binaries.push_back(ng + k);

    SimplexSolver solver(p.lp);
    MilpResult lo = solve_with(solver, p.binaries, false, opts);
    if (lo.status == MilpStatus::Infeasible)
        throw EmptySetError("bounding_interval: empty set");
    if (lo.status == MilpStatus::IterationLimit)
        throw std::runtime_error("bounding_interval: node limit reached");

    Vec neg = -p.lp.obj;
    solver.set_objective(neg);
    MilpResult hi = solve_with(solver, p.binaries, true, opts);
    if (hi.status != MilpStatus::Optimal)
        throw std::runtime_error("bounding_interval: node limit reached");

    return {Z.c()[dim] + lo.objective, Z.c()[dim] + hi.objective};
}

Box bounding_box(const HybridZonotope& Z, const MilpOptions& opts)
{
    Vec lb(Z.dim()), ub(Z.dim());
    for (Index d = 0; d < Z.dim(); ++d)
    {
        auto [lo, hi] = bounding_interval(Z, d, opts);
        lb[d] = lo;
        ub[d] = hi;
    }
    return Box(lb, ub);
}

void write_lp_file(const MilpProblem& p, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_lp_file: cannot open " + path);

    auto var = [](Index j) { return "x" + std::to_string(j); };

    out << (p.maximize ? "Maximize\n obj:" : "Minimize\n obj:");
    for (Index j = 0; j < p.lp.obj.size(); ++j)
        if (p.lp.obj[j] != 0.0)
            out << (p.lp.obj[j] >= 0 ? " + " : " - ")
                << std::abs(p.lp.obj[j]) << " " << var(j);
    out << "\nSubject To\n";
    for (Index i = 0; i < p.lp.A.rows(); ++i)
    {
        out << " r" << i << ":";
        for (Index j = 0; j < p.lp.A.cols(); ++j)
            if (p.lp.A(i, j) != 0.0)
                out << (p.lp.A(i, j) >= 0 ? " + " : " - ")
                    << std::abs(p.lp.A(i, j)) << " " << var(j);
        out << " = " << p.lp.rhs[i] << "\n";
    }
    out << "Bounds\n";
    for (Index j = 0; j < p.lp.lo.size(); ++j)
        out << " " << p.lp.lo[j] << " <= " << var(j) << " <= " << p.lp.hi[j]
            << "\n";
    out << "General\n";
    for (Index j : p.binaries) out << " " << var(j);
    out << "\nEnd\n";
    out << "\\ General variables above are restricted to {-1, +1}\n";
}

}  // namespace hzreach
