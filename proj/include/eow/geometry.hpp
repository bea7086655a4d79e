#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "eow/common.hpp"
#include "eow/quadrature.hpp"

namespace eow
{
//---------------------------------------------------------------------------//
// Cones
//---------------------------------------------------------------------------//

/*!
 * sign * (shift * axis + V+) with V+ = {y : <y,e> > |y - <y,e> e|}.
 *
 * Membership is for the open cone; distances are to its closure.
 */
struct Cone
{
    int n = 4;
    RealVec axis;      //!< unit vector; empty means (1, 0, ..., 0)
    double shift = 0;
    int sign = 1;      //!< -1 for the reflected cone

    static Cone forward(int n, double shift = 0);
    Cone negated() const;
    RealVec unit_axis() const;
    void validate() const;

    bool contains(std::span<const double> y) const;
    //! Signed depth: positive inside, equals dist to the boundary for the unshifted cone.
    double depth(std::span<const double> y) const;
};

double dist_to_cone(std::span<const double> x, const Cone& cone);
RealVec project_to_cone(std::span<const double> x, const Cone& cone);

//---------------------------------------------------------------------------//
// Carriers
//---------------------------------------------------------------------------//

enum class CarrierKind
{
    box1d,
    lightcone4d,
    pointcloud
};

const char* to_string(CarrierKind k);

struct CarrierSet
{
    CarrierKind kind = CarrierKind::box1d;
    double a = 0, b = 0;     //!< box1d real interval
    double ell = 0;          //!< box1d half height, lightcone4d radius
    std::vector<ComplexVec> points;
    std::size_t samples = 100000;  //!< infimum sampling density (lightcone4d)
    std::uint64_t seed = 1;

    static CarrierSet box1d(double a, double b, double ell);
    static CarrierSet lightcone4d(double ell, std::size_t samples = 100000, std::uint64_t seed = 1);
    static CarrierSet pointcloud(std::vector<ComplexVec> points);

    int dim() const;
    void validate() const;
    bool contains(std::span<const cplx> w) const;
    //! max |Im w| over the carrier (sup for open carriers)
    double max_imag() const;
    //! Deterministic samples satisfying the defining inequality.
    std::vector<ComplexVec> sample(std::size_t count, std::uint64_t seed) const;
};

struct GrValue
{
    double value = 0;        //!< best (smallest) value found
    double uncertainty = 0;  //!< sampling resolution estimate
    double bound = 0;        //!< analytic upper bound where available (lightcone4d), else value
    std::size_t evaluations = 0;
};

/*!
 * g_r(x) = inf over w in L of sqrt(r^2 + |x - Re w|^2) - |Im w|.
 * Exact for box1d and pointcloud; stratified sampling plus a one-parameter
 * refinement for lightcone4d.
 */
GrValue g_r(std::span<const double> x, const CarrierSet& L, double r);

//---------------------------------------------------------------------------//
// Regions
//---------------------------------------------------------------------------//

struct Membership
{
    bool member = false;
    double margin = 0;  //!< positive iff member
};

//! O = {g_r > r}
Membership region_O_membership(std::span<const double> x, const CarrierSet& L, double r);

//! Radius y_O with O = {dist(x, K) > y_O} for carriers whose g_r depends on dist(x, K) only.
double region_O_radius(const CarrierSet& L, double r);

struct RegionQ
{
    CarrierSet carrier;
    double r = 0;
    double ell = 0;               //!< margin half-width: Q keeps 2 ell away from the boundary of O
    double threshold = 0;         //!< Q = {dist > threshold} when radial
    double explicit_threshold = 0;  //!< (sqrt2 + 3) ell for lightcone4d, else threshold
    bool radial = true;
    bool empty = false;
    bool explicit_contained = true;  //!< explicit set inside the generic one on samples

    Membership membership(std::span<const double> x) const;
};

/*!
 * {x : dist(x, complement of O) > 2 ell}. Radial carriers use the distance
 * to the core set; point clouds in higher dimension fall back to checking O
 * on a sampled 2 ell shell.
 */
RegionQ region_Q(const CarrierSet& L, double r);

//! Distance to the core of a radial carrier: [a,b] for box1d, V for lightcone4d.
double carrier_core_distance(std::span<const double> x, const CarrierSet& L);

enum class TubeKind
{
    V1,
    V2,
    Z,
    strip
};

struct TubeParams
{
    Cone gamma = Cone::forward(1);
    double r = 1;
    const CarrierSet* carrier = nullptr;  //!< required for Z
    double strip = 1;
    std::size_t z_samples = 4000;         //!< lightcone4d carriers only
};

Membership tube_membership(std::span<const cplx> z, TubeKind which, const TubeParams& params);

struct InclusionReport
{
    std::size_t tested = 0;
    std::size_t violations = 0;
    double worst_margin = 0;
};

//! Draw z = x + iy with |y| < g_r(x) and assert z is in Z.
InclusionReport imaginary_inclusion_check(const CarrierSet& L, double r, std::size_t count,
                                          std::uint64_t seed, double x_range = 5.0);

//---------------------------------------------------------------------------//
// W_{r,delta} and its sphere intersection
//---------------------------------------------------------------------------//

struct WRegion
{
    Cone gamma;
    double r = 0;
    double delta = 0;
    SphereRule omegas;
    double shrink = 0;  //!< r * max angular gap

    double w_margin(std::span<const double> y) const;
    Membership w_membership(std::span<const double> y) const;
    //! y - r omega in W for all sampled omega, with the shrink margin applied.
    Membership intersection_membership(std::span<const double> y) const;
};

struct WReport
{
    WRegion region;
    double condition_rhs = 0;  //!< sqrt((r/sqrt2)^2 + (r/sqrt2 - ell)^2)
    bool condition_holds = false;
    bool gamma_contained = false;
    bool ball_contained = false;
    std::size_t gamma_samples = 0;
    std::size_t gamma_failures = 0;
};

inline constexpr int min_sphere_nodes(int n)
{
    return n == 1 ? 2 : n == 2 ? 16 : 50;
}

/*!
 * Build W_{r,delta} for gamma and test Gamma and B_delta containment of the
 * intersection over omega. n = 1, 2, 3.
 */
WReport w_r_delta_and_gamma_tilde(const Cone& gamma, double r, double delta, const SphereNodes& nodes = {},
                                  std::uint64_t seed = 1);

//! Witness pair showing y lies in the hull of the bases of V1 and V2 (n = 1, 2).
struct HullWitness
{
    bool member = false;
    RealVec upper, lower;  //!< y = (upper + lower) / 2
};

HullWitness convex_hull_membership(std::span<const double> y, const Cone& gamma, double r);

/*!
 * The surface y_1 = f_1(x), y_j = 0. f_1 vanishes on O and equals ell + delta
 * where g_r is below the W-condition value; linear in g_r between.
 */
struct SurfaceS1
{
    CarrierSet carrier;
    double r = 0, ell = 0, delta = 0;

    double f1(std::span<const double> x) const;
    ComplexVec point(std::span<const double> x) const;
    std::string describe() const;
};

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//

struct RegionSample
{
    RealVec x;
    Membership m;
};

struct RegionReport
{
    std::vector<RegionSample> samples;

    void write_csv(std::ostream& os) const;
};

//! Resolve the auto radius ell / (sqrt2 - 1) * (1 + 1e-6).
double auto_radius(double ell);

}  // namespace eow
