#include "hzreach/hybrid_zonotope.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hzreach {

namespace {

void require(bool cond, const std::string& msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Mat hcat(std::initializer_list<Mat> blocks)
{
    Index rows = -1, cols = 0;
    for (const Mat& m : blocks)
    {
        if (rows < 0) rows = m.rows();
        require(m.rows() == rows, "hcat: row count mismatch");
        cols += m.cols();
    }
    Mat out(rows < 0 ? 0 : rows, cols);
    Index at = 0;
    for (const Mat& m : blocks)
    {
        out.middleCols(at, m.cols()) = m;
        at += m.cols();
    }
    return out;
}

Mat vcat(std::initializer_list<Mat> blocks)
{
    Index rows = 0, cols = -1;
    for (const Mat& m : blocks)
    {
        if (cols < 0) cols = m.cols();
        require(m.cols() == cols, "vcat: column count mismatch");
        rows += m.rows();
    }
    Mat out(rows, cols < 0 ? 0 : cols);
    Index at = 0;
    for (const Mat& m : blocks)
    {
        out.middleRows(at, m.rows()) = m;
        at += m.rows();
    }
    return out;
}

Mat blkdiag(std::initializer_list<Mat> blocks)
{
    Index rows = 0, cols = 0;
    for (const Mat& m : blocks)
    {
        rows += m.rows();
        cols += m.cols();
    }
    Mat out = Mat::Zero(rows, cols);
    Index r = 0, c = 0;
    for (const Mat& m : blocks)
    {
        out.block(r, c, m.rows(), m.cols()) = m;
        r += m.rows();
        c += m.cols();
    }
    return out;
}

Vec vstack(std::initializer_list<Vec> blocks)
{
    Index n = 0;
    for (const Vec& v : blocks) n += v.size();
    Vec out(n);
    Index at = 0;
    for (const Vec& v : blocks)
    {
        out.segment(at, v.size()) = v;
        at += v.size();
    }
    return out;
}

Mat selector_rows(const std::vector<Index>& dims, Index n)
{
    Mat R = Mat::Zero(static_cast<Index>(dims.size()), n);
    for (Index k = 0; k < static_cast<Index>(dims.size()); ++k)
    {
        require(dims[k] >= 0 && dims[k] < n, "selector_rows: dimension out of range");
        R(k, dims[k]) = 1.0;
    }
    return R;
}

HybridZonotope::HybridZonotope(Mat Gc, Mat Gb, Vec c, Mat Ac, Mat Ab, Vec b)
    : Gc_(std::move(Gc)), Gb_(std::move(Gb)), c_(std::move(c)),
      Ac_(std::move(Ac)), Ab_(std::move(Ab)), b_(std::move(b))
{
    const Index n = c_.size();
    require(Gc_.rows() == n && Gb_.rows() == n,
            "HybridZonotope: generator row counts must equal dim(c)");
    require(Ac_.rows() == b_.size() && Ab_.rows() == b_.size(),
            "HybridZonotope: constraint row counts must equal dim(b)");
    require(Ac_.cols() == Gc_.cols(), "HybridZonotope: Ac/Gc column mismatch");
    require(Ab_.cols() == Gb_.cols(), "HybridZonotope: Ab/Gb column mismatch");
}

HybridZonotope HybridZonotope::point(const Vec& c)
{
    const Index n = c.size();
    return HybridZonotope(Mat::Zero(n, 0), Mat::Zero(n, 0), c,
                          Mat::Zero(0, 0), Mat::Zero(0, 0), Vec::Zero(0));
}

void HybridZonotope::interval_hull(Vec& lb, Vec& ub) const
{
    Vec r = Gc_.cwiseAbs() * Vec::Ones(Gc_.cols())
          + Gb_.cwiseAbs() * Vec::Ones(Gb_.cols());
    lb = c_ - r;
    ub = c_ + r;
}

Vec HybridZonotope::eval(const Vec& xc, const Vec& xb) const
{
    require(xc.size() == num_cont_gens() && xb.size() == num_bin_gens(),
            "eval: factor size mismatch");
    return Gc_ * xc + Gb_ * xb + c_;
}

Box::Box(Vec lo, Vec hi) : lb(std::move(lo)), ub(std::move(hi))
{
    require(lb.size() == ub.size(), "Box: lb/ub size mismatch");
    for (Index i = 0; i < lb.size(); ++i)
        require(lb[i] <= ub[i], "Box: requires lb <= ub elementwise");
}

Box Box::interval(double lo, double hi)
{
    Vec l(1), u(1);
    l[0] = lo;
    u[0] = hi;
    return Box(l, u);
}

bool Box::contains(const Vec& x, double tol) const
{
    require(x.size() == dim(), "Box::contains: dimension mismatch");
    for (Index i = 0; i < dim(); ++i)
        if (x[i] < lb[i] - tol || x[i] > ub[i] + tol) return false;
    return true;
}

HybridZonotope Box::to_hz() const
{
    const Index n = dim();
    Mat G = Mat::Zero(n, n);
    Vec c(n);
    for (Index i = 0; i < n; ++i)
    {
        c[i] = (lb[i] + ub[i]) / 2.0;
        G(i, i) = (ub[i] - lb[i]) / 2.0;
    }
    return HybridZonotope(G, Mat::Zero(n, 0), c, Mat::Zero(0, n),
                          Mat::Zero(0, 0), Vec::Zero(0));
}

VPolytopeUnion::VPolytopeUnion(Mat vertices, Mat incidence)
    : V(std::move(vertices)), M(std::move(incidence))
{
    require(M.rows() == V.cols(), "VPolytopeUnion: M must have one row per vertex");
    for (Index j = 0; j < M.cols(); ++j)
    {
        double colsum = 0.0;
        for (Index i = 0; i < M.rows(); ++i)
        {
            require(M(i, j) == 0.0 || M(i, j) == 1.0,
                    "VPolytopeUnion: incidence entries must be 0 or 1");
            colsum += M(i, j);
        }
        require(colsum >= 1.0, "VPolytopeUnion: empty incidence column");
    }
}

HybridZonotope linear_map(const Mat& R, const HybridZonotope& Z)
{
    require(R.cols() == Z.dim(), "linear_map: R column count must equal dim(Z)");
    return HybridZonotope(R * Z.Gc(), R * Z.Gb(), R * Z.c(),
                          Z.Ac(), Z.Ab(), Z.b());
}

HybridZonotope affine_map(const Mat& R, const Vec& v, const HybridZonotope& Z)
{
    require(R.cols() == Z.dim(), "affine_map: R column count must equal dim(Z)");
    require(v.size() == R.rows(), "affine_map: offset size must equal row count of R");
    return HybridZonotope(R * Z.Gc(), R * Z.Gb(), R * Z.c() + v,
                          Z.Ac(), Z.Ab(), Z.b());
}

HybridZonotope minkowski_sum(const HybridZonotope& X, const HybridZonotope& Z)
{
    require(X.dim() == Z.dim(), "minkowski_sum: ambient dimensions must match");
    return HybridZonotope(hcat({X.Gc(), Z.Gc()}), hcat({X.Gb(), Z.Gb()}),
                          X.c() + Z.c(),
                          blkdiag({X.Ac(), Z.Ac()}), blkdiag({X.Ab(), Z.Ab()}),
                          vstack({X.b(), Z.b()}));
}

HybridZonotope cartesian_product(const HybridZonotope& X, const HybridZonotope& Z)
{
    return HybridZonotope(blkdiag({X.Gc(), Z.Gc()}), blkdiag({X.Gb(), Z.Gb()}),
                          vstack({X.c(), Z.c()}),
                          blkdiag({X.Ac(), Z.Ac()}), blkdiag({X.Ab(), Z.Ab()}),
                          vstack({X.b(), Z.b()}));
}

HybridZonotope cartesian_power(const HybridZonotope& X, Index k)
{
    require(k >= 1, "cartesian_power: k must be >= 1");
    HybridZonotope out = X;
    for (Index i = 1; i < k; ++i) out = cartesian_product(out, X);
    return out;
}

HybridZonotope generalized_intersection(const HybridZonotope& X,
                                        const HybridZonotope& Z,
                                        const Mat& R)
{
    require(R.cols() == X.dim() && R.rows() == Z.dim(),
            "generalized_intersection: R must map ambient(X) to ambient(Z)");

    const Index gX = X.num_cont_gens(), gZ = Z.num_cont_gens();
    const Index bX = X.num_bin_gens(), bZ = Z.num_bin_gens();

    Mat Gc = hcat({X.Gc(), Mat(Mat::Zero(X.dim(), gZ))});
    Mat Gb = hcat({X.Gb(), Mat(Mat::Zero(X.dim(), bZ))});

    Mat couple_c = hcat({Mat(R * X.Gc()), Mat(-Z.Gc())});
    Mat couple_b = hcat({Mat(R * X.Gb()), Mat(-Z.Gb())});

    Mat Ac = vcat({Mat(hcat({X.Ac(), Mat(Mat::Zero(X.num_constraints(), gZ))})),
                   Mat(hcat({Mat(Mat::Zero(Z.num_constraints(), gX)), Z.Ac()})),
                   couple_c});
    Mat Ab = vcat({Mat(hcat({X.Ab(), Mat(Mat::Zero(X.num_constraints(), bZ))})),
                   Mat(hcat({Mat(Mat::Zero(Z.num_constraints(), bX)), Z.Ab()})),
                   couple_b});
    Vec b = vstack({X.b(), Z.b(), Vec(Z.c() - R * X.c())});

    return HybridZonotope(Gc, Gb, X.c(), Ac, Ab, b);
}

HybridZonotope intersection(const HybridZonotope& X, const HybridZonotope& Z)
{
    require(X.dim() == Z.dim(), "intersection: ambient dimensions must match");
    return generalized_intersection(X, Z, Mat::Identity(X.dim(), X.dim()));
}

HybridZonotope union_pair(const HybridZonotope& X, const HybridZonotope& Z)
{
    require(X.dim() == Z.dim(), "union_pair: ambient dimensions must match");

    const Index n = X.dim();
    const Index gX = X.num_cont_gens(), gZ = Z.num_cont_gens();
    const Index bX = X.num_bin_gens(), bZ = Z.num_bin_gens();
    const Index cX = X.num_constraints(), cZ = Z.num_constraints();

    // Branch selector: +1 activates X, -1 activates Z. Constituent factors
    // are negated in the output columns and forced to +1 while inactive, so
    // the inactive branch contributes the constant (G 1 + ...) absorbed in
    // the center and the selector generator.
    Vec sumX = X.Gc() * Vec::Ones(gX) + X.Gb() * Vec::Ones(bX);
    Vec sumZ = Z.Gc() * Vec::Ones(gZ) + Z.Gb() * Vec::Ones(bZ);
    Vec g0 = 0.5 * ((X.c() - Z.c()) + sumZ - sumX);
    Vec c0 = X.c() + sumZ - g0;

    const Index ng = gX + gZ + gX + gZ + bX + bZ;  // gens, then slacks
    const Index nb = bX + bZ + 1;
    const Index nc = gX + gZ + bX + bZ + cX + cZ;

    Mat Gc = Mat::Zero(n, ng);
    Gc.middleCols(0, gX) = -X.Gc();
    Gc.middleCols(gX, gZ) = -Z.Gc();

    Mat Gb = Mat::Zero(n, nb);
    Gb.middleCols(0, bX) = -X.Gb();
    Gb.middleCols(bX, bZ) = -Z.Gb();
    Gb.col(bX + bZ) = g0;

    Mat Ac = Mat::Zero(nc, ng);
    Mat Ab = Mat::Zero(nc, nb);
    Vec b = Vec::Zero(nc);

    const Index slack0 = gX + gZ;          // slacks for continuous factors
    const Index bslack0 = slack0 + gX + gZ;  // slacks for binary factors
    const Index sel = bX + bZ;
    Index row = 0;

    // Forcing rows: factor + slack +/- selector = 1.
    for (Index i = 0; i < gX; ++i, ++row)
    {
        Ac(row, i) = 1.0;
        Ac(row, slack0 + i) = 1.0;
        Ab(row, sel) = 1.0;
        b[row] = 1.0;
    }
    for (Index i = 0; i < gZ; ++i, ++row)
    {
        Ac(row, gX + i) = 1.0;
        Ac(row, slack0 + gX + i) = 1.0;
        Ab(row, sel) = -1.0;
        b[row] = 1.0;
    }
    for (Index i = 0; i < bX; ++i, ++row)
    {
        Ab(row, i) = 1.0;
        Ac(row, bslack0 + i) = 1.0;
        Ab(row, sel) = 1.0;
        b[row] = 1.0;
    }
    for (Index i = 0; i < bZ; ++i, ++row)
    {
        Ab(row, bX + i) = 1.0;
        Ac(row, bslack0 + bX + i) = 1.0;
        Ab(row, sel) = -1.0;
        b[row] = 1.0;
    }

    // Constituent constraints, deactivated through the selector column.
    if (cX > 0)
    {
        Vec sX = X.Ac() * Vec::Ones(gX) + X.Ab() * Vec::Ones(bX);
        Ac.block(row, 0, cX, gX) = -X.Ac();
        Ab.block(row, 0, cX, bX) = -X.Ab();
        Ab.block(row, sel, cX, 1) = 0.5 * (-sX - X.b());
        b.segment(row, cX) = 0.5 * (X.b() - sX);
        row += cX;
    }
    if (cZ > 0)
    {
        Vec sZ = Z.Ac() * Vec::Ones(gZ) + Z.Ab() * Vec::Ones(bZ);
        Ac.block(row, gX, cZ, gZ) = -Z.Ac();
        Ab.block(row, bX, cZ, bZ) = -Z.Ab();
        Ab.block(row, sel, cZ, 1) = 0.5 * (Z.b() + sZ);
        b.segment(row, cZ) = 0.5 * (Z.b() - sZ);
        row += cZ;
    }

    return HybridZonotope(Gc, Gb, c0, Ac, Ab, b);
}

namespace {

// Auxiliary set over (vertex weights, polytope selector) intersected with
// { h <= 0 } under [I -M]: weights form a simplex, exactly one selector is
// hot, and weights of unselected vertices are pinned to zero.
HybridZonotope vrep_weight_set(const VPolytopeUnion& U)
{
    const Index nv = U.num_vertices();
    const Index N = U.num_polytopes();

    Mat Gc = 0.5 * vcat({Mat(Mat::Identity(nv, nv)), Mat(Mat::Zero(N, nv))});
    Mat Gb = 0.5 * vcat({Mat(Mat::Zero(nv, N)), Mat(Mat::Identity(N, N))});
    Vec c = 0.5 * Vec::Ones(nv + N);
    Mat Ac = Mat::Zero(2, nv);
    Ac.row(0) = 0.5 * Mat::Ones(1, nv);
    Mat Ab = Mat::Zero(2, N);
    Ab.row(1) = 0.5 * Mat::Ones(1, N);
    Vec b(2);
    b[0] = 0.5 * (2.0 - static_cast<double>(nv));
    b[1] = 0.5 * (2.0 - static_cast<double>(N));
    HybridZonotope Q(Gc, Gb, c, Ac, Ab, b);

    // lambda - M delta lies in [-1, 1] a priori; restricting to [-1, 0]
    // expresses h <= 0.
    Box hs(Vec(-Vec::Ones(nv)), Vec(Vec::Zero(nv)));
    Mat R = hcat({Mat(Mat::Identity(nv, nv)), Mat(-U.M)});
    return generalized_intersection(Q, hs.to_hz(), R);
}

}  // namespace

HybridZonotope union_vrep_to_hz(const VPolytopeUnion& U)
{
    const Index n = U.dim();
    HybridZonotope D = vrep_weight_set(U);
    Mat map = hcat({U.V, Mat(Mat::Zero(n, U.num_polytopes()))});
    return linear_map(map, D);
}

HybridZonotope union_vrep_to_hz_lifted(const VPolytopeUnion& U)
{
    const Index n = U.dim();
    const Index nv = U.num_vertices();
    const Index N = U.num_polytopes();
    HybridZonotope D = vrep_weight_set(U);

    // Bounding box of the vertices carries the ambient coordinates; tie rows
    // w = [V 0] (lambda, delta) pin them to the weight combination.
    Vec lo = U.V.rowwise().minCoeff();
    Vec hi = U.V.rowwise().maxCoeff();
    HybridZonotope W = Box(lo, hi).to_hz();
    HybridZonotope P = cartesian_product(W, D);

    Mat R(n, n + nv + N);
    R << Mat::Identity(n, n), -U.V, Mat::Zero(n, N);
    HybridZonotope tied = generalized_intersection(
        P, HybridZonotope::point(Vec::Zero(n)), R);

    Mat proj = hcat({Mat(Mat::Identity(n, n)), Mat(Mat::Zero(n, nv + N))});
    return linear_map(proj, tied);
}

HybridZonotope reduce_redundant_generators(const HybridZonotope& Z)
{
    Mat Gc = Z.Gc(), Gb = Z.Gb(), Ac = Z.Ac(), Ab = Z.Ab();
    Vec c = Z.c(), b = Z.b();

    auto drop_col = [](Mat& M, Index j) {
        Mat out(M.rows(), M.cols() - 1);
        if (j > 0) out.leftCols(j) = M.leftCols(j);
        if (M.cols() - j - 1 > 0)
            out.rightCols(M.cols() - j - 1) = M.rightCols(M.cols() - j - 1);
        M = out;
    };
    auto drop_row = [](Mat& M, Index i) {
        Mat out(M.rows() - 1, M.cols());
        if (i > 0) out.topRows(i) = M.topRows(i);
        if (M.rows() - i - 1 > 0)
            out.bottomRows(M.rows() - i - 1) = M.bottomRows(M.rows() - i - 1);
        M = out;
    };
    auto drop_entry = [](Vec& v, Index i) {
        Vec out(v.size() - 1);
        if (i > 0) out.head(i) = v.head(i);
        if (v.size() - i - 1 > 0) out.tail(v.size() - i - 1) = v.tail(v.size() - i - 1);
        v = out;
    };
    auto row_is_zero = [](const Mat& M, Index i) {
        return M.cols() == 0 || M.row(i).cwiseAbs().maxCoeff() == 0.0;
    };
    auto col_is_zero = [](const Mat& M, Index j) {
        return M.rows() == 0 || M.col(j).cwiseAbs().maxCoeff() == 0.0;
    };

    bool changed = true;
    while (changed)
    {
        changed = false;

        // Zero constraint rows (0 = 0) carry no information.
        for (Index i = 0; i < Ac.rows();)
        {
            if (row_is_zero(Ac, i) && row_is_zero(Ab, i) && b[i] == 0.0)
            {
                drop_row(Ac, i);
                drop_row(Ab, i);
                drop_entry(b, i);
                changed = true;
            }
            else ++i;
        }

        // Generator columns absent from both the map and the constraints.
        for (Index j = 0; j < Gc.cols();)
        {
            if (col_is_zero(Gc, j) && col_is_zero(Ac, j))
            {
                drop_col(Gc, j);
                drop_col(Ac, j);
                changed = true;
            }
            else ++j;
        }
        for (Index j = 0; j < Gb.cols();)
        {
            if (col_is_zero(Gb, j) && col_is_zero(Ab, j))
            {
                drop_col(Gb, j);
                drop_col(Ab, j);
                changed = true;
            }
            else ++j;
        }

        // Single-pivot elimination: solve row i for factor j and substitute
        // when the implied range of the factor stays inside [-1, 1] for
        // every box-feasible assignment of the others.
        bool eliminated = false;
        for (Index i = 0; i < Ac.rows() && !eliminated; ++i)
        {
            for (Index j = 0; j < Ac.cols() && !eliminated; ++j)
            {
                const double piv = Ac(i, j);
                if (std::abs(piv) < 1e-8) continue;
                double radius = 0.0;
                for (Index m = 0; m < Ac.cols(); ++m)
                    if (m != j) radius += std::abs(Ac(i, m));
                for (Index p = 0; p < Ab.cols(); ++p)
                    radius += std::abs(Ab(i, p));
                const double mid = b[i] / piv;
                const double half = radius / std::abs(piv);
                if (mid - half < -1.0 || mid + half > 1.0) continue;

                c += Gc.col(j) * (b[i] / piv);
                const Vec gj = Gc.col(j);
                for (Index m = 0; m < Ac.cols(); ++m)
                    if (m != j) Gc.col(m) -= gj * (Ac(i, m) / piv);
                for (Index p = 0; p < Ab.cols(); ++p)
                    Gb.col(p) -= gj * (Ab(i, p) / piv);
                for (Index k = 0; k < Ac.rows(); ++k)
                {
                    if (k == i) continue;
                    const double f = Ac(k, j) / piv;
                    if (f == 0.0) continue;
                    Ac.row(k) -= f * Ac.row(i);
                    Ab.row(k) -= f * Ab.row(i);
                    b[k] -= f * b[i];
                }
                drop_col(Gc, j);
                drop_col(Ac, j);
                drop_row(Ac, i);
                drop_row(Ab, i);
                drop_entry(b, i);
                eliminated = true;
                changed = true;
            }
        }
    }

    return HybridZonotope(Gc, Gb, c, Ac, Ab, b);
}

}  // namespace hzreach
