#ifndef HZREACH_HYBRID_ZONOTOPE_HPP_
#define HZREACH_HYBRID_ZONOTOPE_HPP_

#include <vector>

#include "hzreach/matrix.hpp"

namespace hzreach {

/**
 * Hybrid zonotope in HCG form,
 *
 *   Z = { Gc xc + Gb xb + c |  ||xc||_inf <= 1, xb in {-1,1}^nb,
 *                              Ac xc + Ab xb = b }.
 *
 * Empty generator/constraint blocks are zero-column (zero-row) matrices,
 * never absent. Instances are immutable after construction; all set
 * operations are free functions returning new values.
 */
class HybridZonotope
{
  public:
    HybridZonotope(Mat Gc, Mat Gb, Vec c, Mat Ac, Mat Ab, Vec b);

    /// Set with the given ambient dimension and no generators or
    /// constraints, i.e. the singleton {c}.
    static HybridZonotope point(const Vec& c);

    Index dim() const { return c_.size(); }
    Index num_cont_gens() const { return Gc_.cols(); }
    Index num_bin_gens() const { return Gb_.cols(); }
    Index num_constraints() const { return Ac_.rows(); }

    const Mat& Gc() const { return Gc_; }
    const Mat& Gb() const { return Gb_; }
    const Vec& c() const { return c_; }
    const Mat& Ac() const { return Ac_; }
    const Mat& Ab() const { return Ab_; }
    const Vec& b() const { return b_; }

    /// Interval-arithmetic bounding box [c - r, c + r] with
    /// r = |Gc| 1 + |Gb| 1. Sound but not tight for constrained sets.
    void interval_hull(Vec& lb, Vec& ub) const;

    /// Value of the affine map at a factor assignment (no feasibility check).
    Vec eval(const Vec& xc, const Vec& xb) const;

  private:
    Mat Gc_, Gb_;
    Vec c_;
    Mat Ac_, Ab_;
    Vec b_;
};

/// Axis-aligned box [lb, ub].
struct Box
{
    Vec lb;
    Vec ub;

    Box() = default;
    Box(Vec lo, Vec hi);
    static Box interval(double lo, double hi);

    Index dim() const { return lb.size(); }
    bool contains(const Vec& x, double tol = 0.0) const;

    /// Lossless conversion to an HZ with nb = nc = 0.
    HybridZonotope to_hz() const;
};

/// Union of V-rep polytopes sharing a vertex matrix. Column j of the 0/1
/// incidence matrix M selects the vertices of polytope j.
struct VPolytopeUnion
{
    Mat V;  // n x nv vertices
    Mat M;  // nv x N incidence

    VPolytopeUnion(Mat vertices, Mat incidence);
    Index dim() const { return V.rows(); }
    Index num_vertices() const { return V.cols(); }
    Index num_polytopes() const { return M.cols(); }
};

/// { R z : z in Z }. Constraint blocks are unchanged.
HybridZonotope linear_map(const Mat& R, const HybridZonotope& Z);

/// { R z + v : z in Z }.
HybridZonotope affine_map(const Mat& R, const Vec& v, const HybridZonotope& Z);

/// { x + z : x in X, z in Z }.
HybridZonotope minkowski_sum(const HybridZonotope& X, const HybridZonotope& Z);

/// X x Z as a block-diagonal stack of all fields.
HybridZonotope cartesian_product(const HybridZonotope& X, const HybridZonotope& Z);

/// k-ary Cartesian power of X (k >= 1).
HybridZonotope cartesian_power(const HybridZonotope& X, Index k);

/// Generalized intersection { x in X : R x in Z }. X keeps its generators;
/// Z contributes zero generator columns plus the coupling rows
/// R Gc_X xc_X - Gc_Z xc_Z + R Gb_X xb_X - Gb_Z xb_Z = c_Z - R c_X.
HybridZonotope generalized_intersection(const HybridZonotope& X,
                                        const HybridZonotope& Z,
                                        const Mat& R);

/// Plain intersection X ∩ Z (R = identity).
HybridZonotope intersection(const HybridZonotope& X, const HybridZonotope& Z);

/// Union of two HZs as a single HZ. One fresh binary factor selects the
/// branch; each constituent generator gets a slack factor and a forcing row
/// that pins it when its branch is inactive, and constituent constraint rows
/// get a compensating column on the selector.
HybridZonotope union_pair(const HybridZonotope& X, const HybridZonotope& Z);

/// HZ equal to the union of V-rep polytopes: an auxiliary set over
/// (vertex weights, polytope selector) with one-hot constraints is
/// intersected with { h <= 0 } under [I -M] and mapped by [V 0].
HybridZonotope union_vrep_to_hz(const VPolytopeUnion& U);

/// Variant of union_vrep_to_hz that keeps the ambient coordinates as
/// explicit box-backed generators tied to the vertex weights by constraint
/// rows: [I 0]((B x D) ∩ {w - [V 0](λ,δ) = 0}). Same set, dim extra
/// generators and constraint rows.
HybridZonotope union_vrep_to_hz_lifted(const VPolytopeUnion& U);

/// Removes redundant continuous generators and constraints: zero columns,
/// zero rows, and single-pivot eliminations whose implied factor range stays
/// inside [-1, 1]. Membership-equal to the input.
HybridZonotope reduce_redundant_generators(const HybridZonotope& Z);

}  // namespace hzreach

#endif  // HZREACH_HYBRID_ZONOTOPE_HPP_
