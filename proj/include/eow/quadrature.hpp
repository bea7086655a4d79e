#pragma once

#include <limits>
#include <string>

#include "eow/common.hpp"

namespace eow
{
//---------------------------------------------------------------------------//
// Horizontal product contours
//---------------------------------------------------------------------------//

//! Evaluator on C^n.
using ComplexFn = std::function<cplx(std::span<const cplx>)>;

/*!
 * Product contour prod_j {x_j + i*heights[j]} truncated to the box
 * |x_j - center_j| <= half_width, sampled with uniform step.
 *
 * Orientation is left-to-right in every coordinate. half_width must be an
 * integer multiple of step; use make_contour() to round a requested
 * truncation up to the grid.
 */
struct ContourSpec
{
    RealVec heights;
    double half_width = 12.0;
    double step = 1e-2;
    RealVec center;  //!< empty means the origin

    std::size_t dim() const { return heights.size(); }
    std::size_t intervals_per_side() const;
    void validate() const;
};

ContourSpec make_contour(RealVec heights, double half_width, double step, RealVec center = {});

struct QuadratureResult
{
    cplx value{};
    double halving_error = 0;  //!< |I_h - I_{2h}|
    double tail_error = 0;     //!< from the largest sample on the outer shell

    double error() const { return halving_error + tail_error; }
};

/*!
 * Trapezoid rule over a truncated horizontal contour.
 *
 * Throws EvaluationError on a non-finite sample and AccuracyError when the
 * tail estimate exceeds tail_tolerance.
 */
QuadratureResult line_integral(const ComplexFn& f, const ContourSpec& contour,
                               double tail_tolerance = std::numeric_limits<double>::infinity());

//! One-dimensional fast path with the same contract.
QuadratureResult line_integral_1d(const std::function<cplx(cplx)>& f, const ContourSpec& contour,
                                  double tail_tolerance = std::numeric_limits<double>::infinity());

//---------------------------------------------------------------------------//
// Gauss-Legendre rules and polyline paths
//---------------------------------------------------------------------------//

struct GaussRule
{
    RealVec nodes;    //!< on [-1, 1]
    RealVec weights;
};

GaussRule gauss_legendre(int order);

//! Quadrature node on a complex path; weight already includes dz.
struct PathNode
{
    cplx z;
    cplx weight;
};

/*!
 * Composite Gauss-Legendre discretization of the polyline through vertices.
 * Each segment is split into panels no longer than panel_length.
 */
std::vector<PathNode> discretize_polyline(std::span<const cplx> vertices, double panel_length,
                                          int order = 10);

cplx integrate_path(const std::function<cplx(cplx)>& f, std::span<const PathNode> nodes);

//---------------------------------------------------------------------------//
// Sphere averages
//---------------------------------------------------------------------------//

/*!
 * Quadrature rule on S^{n-1} with weights summing to the surface measure.
 *
 * n=1: the two points {+1, -1}, unit weights (counting measure).
 * n=2: equi-angular trapezoid.
 * n=3: Gauss-Legendre in the polar cosine times equi-angular azimuth.
 */
struct SphereRule
{
    int dim = 1;
    std::vector<RealVec> points;
    RealVec weights;

    std::size_t size() const { return points.size(); }
    //! Largest angle between a unit vector and its nearest node (upper bound).
    double max_angular_gap() const;
};

struct SphereNodes
{
    int circle = 256;    //!< n=2
    int polar = 10;      //!< n=3
    int azimuth = 59;    //!< n=3, default 10 x 59 = 590 nodes
};

SphereRule sphere_rule(int n, const SphereNodes& nodes = {});

double sphere_measure(int n);

cplx sphere_average(const std::function<cplx(std::span<const double>)>& g, int n,
                    const SphereNodes& nodes = {});
cplx sphere_average(const std::function<cplx(std::span<const double>)>& g, const SphereRule& rule);

//---------------------------------------------------------------------------//
// t -> 0+ ladders
//---------------------------------------------------------------------------//

struct LadderSpec
{
    RealVec t;      //!< strictly decreasing, positive
    int order = 2;  //!< Neville columns; the fit uses the last order+1 rungs

    static LadderSpec geometric(double t0 = 0.5, double ratio = 0.5, int rungs = 8, int order = 2);
    void validate() const;
};

struct LadderLimit
{
    cplx limit{};
    double confidence = 0;  //!< |last correction|
    bool converged = true;
    std::string diagnosis;
};

/*!
 * Polynomial (Richardson) extrapolation of values v(t_k) to t = 0 assuming
 * an error expansion in integer powers of t.
 */
LadderLimit ladder_limit(std::span<const cplx> values, const LadderSpec& ladder);

}  // namespace eow
