#include "eow/geometry.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace eow
{
namespace
{
RealVec sub(std::span<const double> a, std::span<const double> b)
{
    RealVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

double dist(std::span<const double> a, std::span<const double> b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

RealVec random_direction(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    RealVec u(n);
    double s = 0;
    do
    {
        for (auto& c : u)
            c = g(rng);
        s = norm2(u);
    } while (s < 1e-12);
    for (auto& c : u)
        c /= s;
    return u;
}

// y' = sign*y - shift*e, then (a, b) = (axial, transverse) parts
struct ConeCoords
{
    RealVec yp;
    RealVec e;
    double a = 0;
    RealVec perp;
    double b = 0;
};

ConeCoords cone_coords(std::span<const double> y, const Cone& cone)
{
    cone.validate();
    require_same_dim(y.size(), static_cast<std::size_t>(cone.n), "cone");
    ConeCoords c;
    c.e = cone.unit_axis();
    c.yp.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        c.yp[i] = cone.sign * y[i] - cone.shift * c.e[i];
    c.a = dot(c.yp, c.e);
    c.perp = c.yp;
    for (std::size_t i = 0; i < y.size(); ++i)
        c.perp[i] -= c.a * c.e[i];
    c.b = norm2(c.perp);
    return c;
}
}  // namespace

//---------------------------------------------------------------------------//
Cone Cone::forward(int n, double shift)
{
    Cone c;
    c.n = n;
    c.shift = shift;
    c.validate();
    return c;
}

Cone Cone::negated() const
{
    Cone c = *this;
    c.sign = -sign;
    return c;
}

RealVec Cone::unit_axis() const
{
    if (axis.empty())
    {
        RealVec e(static_cast<std::size_t>(n), 0.0);
        e[0] = 1;
        return e;
    }
    return axis;
}

void Cone::validate() const
{
    if (n < 1)
        throw InvalidArgument("cone: dimension must be positive");
    if (!(shift >= 0))
        throw InvalidArgument("cone: shift must be nonnegative");
    if (sign != 1 && sign != -1)
        throw InvalidArgument("cone: sign must be +1 or -1");
    if (!axis.empty())
    {
        require_same_dim(axis.size(), static_cast<std::size_t>(n), "cone axis");
        if (std::abs(norm2(axis) - 1) > 1e-12)
            throw InvalidArgument("cone: axis must be a unit vector");
    }
}

bool Cone::contains(std::span<const double> y) const
{
    auto c = cone_coords(y, *this);
    return c.a > c.b;
}

double Cone::depth(std::span<const double> y) const
{
    auto c = cone_coords(y, *this);
    return n == 1 ? c.a : (c.a - c.b) / sqrt2;
}

double dist_to_cone(std::span<const double> x, const Cone& cone)
{
    auto c = cone_coords(x, cone);
    if (c.b <= c.a)
        return 0.0;
    if (c.b <= -c.a)
        return norm2(c.yp);
    return (c.b - c.a) / sqrt2;
}

RealVec project_to_cone(std::span<const double> x, const Cone& cone)
{
    auto c = cone_coords(x, cone);
    RealVec p(x.size(), 0.0);
    if (c.b <= c.a)
        p = c.yp;
    else if (c.b > -c.a)
    {
        double t = 0.5 * (c.a + c.b);
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = t * c.e[i] + t * c.perp[i] / c.b;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = cone.sign * (p[i] + cone.shift * c.e[i]);
    return p;
}

//---------------------------------------------------------------------------//
const char* to_string(CarrierKind k)
{
    switch (k)
    {
    case CarrierKind::box1d: return "box1d";
    case CarrierKind::lightcone4d: return "lightcone4d";
    default: return "pointcloud";
    }
}

CarrierSet CarrierSet::box1d(double a, double b, double ell)
{
    CarrierSet c;
    c.kind = CarrierKind::box1d;
    c.a = a;
    c.b = b;
    c.ell = ell;
    c.validate();
    return c;
}

CarrierSet CarrierSet::lightcone4d(double ell, std::size_t samples, std::uint64_t seed)
{
    CarrierSet c;
    c.kind = CarrierKind::lightcone4d;
    c.ell = ell;
    c.samples = samples;
    c.seed = seed;
    c.validate();
    return c;
}

CarrierSet CarrierSet::pointcloud(std::vector<ComplexVec> points)
{
    CarrierSet c;
    c.kind = CarrierKind::pointcloud;
    c.points = std::move(points);
    c.validate();
    return c;
}

int CarrierSet::dim() const
{
    switch (kind)
    {
    case CarrierKind::box1d: return 1;
    case CarrierKind::lightcone4d: return 4;
    default: return points.empty() ? 0 : static_cast<int>(points.front().size());
    }
}

void CarrierSet::validate() const
{
    switch (kind)
    {
    case CarrierKind::box1d:
        if (!(a <= b) || !(ell >= 0))
            throw InvalidArgument("carrier box1d: need a <= b and ell >= 0");
        break;
    case CarrierKind::lightcone4d:
        if (!(ell > 0))
            throw InvalidArgument("carrier lightcone4d: ell must be positive");
        if (samples < 1)
            throw InvalidArgument("carrier lightcone4d: sampling density must be positive");
        break;
    case CarrierKind::pointcloud:
        if (points.empty())
            throw InvalidArgument("carrier pointcloud: empty carrier");
        for (const auto& p : points)
            if (p.empty() || p.size() != points.front().size())
                throw InvalidArgument("carrier pointcloud: inconsistent point dimensions");
        break;
    }
}

bool CarrierSet::contains(std::span<const cplx> w) const
{
    require_same_dim(w.size(), static_cast<std::size_t>(dim()), "carrier");
    switch (kind)
    {
    case CarrierKind::box1d:
        return w[0].real() >= a && w[0].real() <= b && std::abs(w[0].imag()) <= ell;
    case CarrierKind::lightcone4d: {
        RealVec re = real_part(w);
        RealVec im = imag_part(w);
        double spatial = std::sqrt(im[1] * im[1] + im[2] * im[2] + im[3] * im[3]);
        return dist_to_cone(re, Cone::forward(4)) + std::abs(im[0]) + spatial < ell;
    }
    default:
        for (const auto& p : points)
        {
            bool eq = true;
            for (std::size_t i = 0; i < p.size(); ++i)
                eq = eq && p[i] == w[i];
            if (eq)
                return true;
        }
        return false;
    }
}

double CarrierSet::max_imag() const
{
    if (kind != CarrierKind::pointcloud)
        return ell;
    double m = 0;
    for (const auto& p : points)
        m = std::max(m, norm2(imag_part(p)));
    return m;
}

std::vector<ComplexVec> CarrierSet::sample(std::size_t count, std::uint64_t s) const
{
    validate();
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<ComplexVec> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
    {
        switch (kind)
        {
        case CarrierKind::box1d:
            out.push_back({cplx(a + (b - a) * unif(rng), ell * (2 * unif(rng) - 1))});
            break;
        case CarrierKind::pointcloud: out.push_back(points[k % points.size()]); break;
        case CarrierKind::lightcone4d: {
            // base point in the closed cone, then |Re w - x| + |Im w|_1 < ell
            double tau = 4 * ell * unif(rng);
            RealVec v = random_direction(3, rng);
            double q = unif(rng);
            RealVec x{tau, tau * q * v[0], tau * q * v[1], tau * q * v[2]};
            double budget = ell * unif(rng);
            double s_im = budget * unif(rng);
            double rho = (budget - s_im) * unif(rng);
            RealVec u = random_direction(4, rng);
            double split = unif(rng);
            RealVec iv = random_direction(3, rng);
            double sgn = unif(rng) < 0.5 ? -1.0 : 1.0;
            ComplexVec w(4);
            w[0] = {x[0] + rho * u[0], sgn * split * s_im};
            for (int j = 1; j < 4; ++j)
                w[j] = {x[j] + rho * u[j], (1 - split) * s_im * iv[j - 1]};
            out.push_back(std::move(w));
            break;
        }
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
namespace
{
double g_term(std::span<const double> x, std::span<const cplx> w, double r)
{
    double d2 = 0, im2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        d2 += (x[i] - w[i].real()) * (x[i] - w[i].real());
        im2 += std::norm(w[i].imag());
    }
    return std::sqrt(r * r + d2) - std::sqrt(im2);
}

GrValue g_r_lightcone(std::span<const double> x, const CarrierSet& L, double r)
{
    const double ell = L.ell;
    const Cone V = Cone::forward(4);
    RealVec p = project_to_cone(x, V);
    RealVec dir = sub(x, p);
    const double y = norm2(dir);
    if (y > 0)
        for (auto& c : dir)
            c /= y;
    else
        dir = {0, 1, 0, 0};

    GrValue out;
    out.bound = std::sqrt(r * r + y * y) - ell;

    // Stratified in s = |Im w|_1: real parts near proj_V(x), imaginary part
    // along the time axis or split with the spatial part.
    std::mt19937_64 rng(L.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t strata = 50;
    double sampled = std::numeric_limits<double>::infinity();
    ComplexVec w(4);
    for (std::size_t k = 0; k < L.samples; ++k)
    {
        double s = ell * (static_cast<double>(k % strata) + unif(rng)) / strata;
        double rho = (ell - s) * unif(rng);
        RealVec u = unif(rng) < 0.5 ? dir : random_direction(4, rng);
        RealVec base = p;
        if (k % 10 == 9)
        {
            // elsewhere on the cone near p
            RealVec jitter = random_direction(4, rng);
            RealVec q(4);
            for (int j = 0; j < 4; ++j)
                q[j] = p[j] + (ell + y) * unif(rng) * jitter[j];
            base = project_to_cone(q, V);
        }
        double split = unif(rng) < 0.5 ? 1.0 : unif(rng);
        RealVec iv = random_direction(3, rng);
        w[0] = {base[0] + rho * u[0], split * s};
        for (int j = 1; j < 4; ++j)
            w[j] = {base[j] + rho * u[j], (1 - split) * s * iv[j - 1]};
        sampled = std::min(sampled, g_term(x, w, r));
    }

    // One-parameter refinement along Re w = p + (ell - s)(1 - eps) dir.
    const double eps = 1e-9;
    auto along = [&](double s) {
        double step = (ell - s) * (1 - eps);
        for (int j = 0; j < 4; ++j)
            w[j] = {p[j] + step * dir[j], j == 0 ? s : 0.0};
        return g_term(x, w, r);
    };
    double lo = 0, hi = ell * (1 - eps);
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = along(c), fd = along(d);
    for (int it = 0; it < 120; ++it)
    {
        if (fc < fd)
        {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = along(c);
        }
        else
        {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = along(d);
        }
    }
    double refined = std::min({fc, fd, along(ell * (1 - eps)), along(0.0)});
    out.value = std::min(sampled, refined);
    out.uncertainty = std::max(0.0, sampled - out.value) + eps * (ell + r);
    out.evaluations = L.samples + 124;
    return out;
}
}  // namespace

GrValue g_r(std::span<const double> x, const CarrierSet& L, double r)
{
    L.validate();
    if (!(r > 0))
        throw InvalidArgument("g_r: r must be positive");
    require_same_dim(x.size(), static_cast<std::size_t>(L.dim()), "g_r");
    GrValue out;
    switch (L.kind)
    {
    case CarrierKind::box1d: {
        double d = std::max({0.0, L.a - x[0], x[0] - L.b});
        out.value = std::sqrt(r * r + d * d) - L.ell;
        out.evaluations = 1;
        break;
    }
    case CarrierKind::pointcloud:
        out.value = std::numeric_limits<double>::infinity();
        for (const auto& w : L.points)
            out.value = std::min(out.value, g_term(x, w, r));
        out.evaluations = L.points.size();
        break;
    case CarrierKind::lightcone4d: return g_r_lightcone(x, L, r);
    }
    out.bound = out.value;
    return out;
}

//---------------------------------------------------------------------------//
Membership region_O_membership(std::span<const double> x, const CarrierSet& L, double r)
{
    double m = g_r(x, L, r).value - r;
    return {m > 0, m};
}

namespace
{
bool is_radial(const CarrierSet& L)
{
    return L.kind != CarrierKind::pointcloud || L.points.size() == 1;
}

double radial_ell(const CarrierSet& L)
{
    return L.kind == CarrierKind::pointcloud ? L.max_imag() : L.ell;
}
}  // namespace

double region_O_radius(const CarrierSet& L, double r)
{
    if (!is_radial(L))
        throw InvalidArgument("region_O_radius: carrier is not radial");
    double ell = radial_ell(L);
    return std::sqrt(ell * (2 * r + ell));
}

double carrier_core_distance(std::span<const double> x, const CarrierSet& L)
{
    require_same_dim(x.size(), static_cast<std::size_t>(L.dim()), "carrier_core_distance");
    switch (L.kind)
    {
    case CarrierKind::box1d: return std::max({0.0, L.a - x[0], x[0] - L.b});
    case CarrierKind::lightcone4d: return dist_to_cone(x, Cone::forward(4));
    default:
        if (L.points.size() != 1)
            throw InvalidArgument("carrier_core_distance: carrier is not radial");
        return dist(x, real_part(L.points.front()));
    }
}

Membership RegionQ::membership(std::span<const double> x) const
{
    if (radial)
    {
        double m = carrier_core_distance(x, carrier) - threshold;
        return {m > 0, m};
    }
    // All of the closed 2 ell ball (sampled) must lie in O.
    const std::size_t n = x.size();
    double worst = region_O_membership(x, carrier, r).margin;
    RealVec q(n);
    if (n == 1)
    {
        for (int k = -32; k <= 32; ++k)
        {
            q[0] = x[0] + 2 * ell * k / 32.0;
            worst = std::min(worst, region_O_membership(q, carrier, r).margin);
        }
    }
    else
    {
        SphereRule dirs = sphere_rule(static_cast<int>(std::min<std::size_t>(n, 3)));
        for (const auto& u : dirs.points)
            for (double rad : {0.5 * ell, ell, 1.5 * ell, 2 * ell})
            {
                for (std::size_t i = 0; i < n; ++i)
                    q[i] = x[i] + (i < u.size() ? rad * u[i] : 0.0);
                worst = std::min(worst, region_O_membership(q, carrier, r).margin);
            }
    }
    return {worst > 0, worst};
}

RegionQ region_Q(const CarrierSet& L, double r)
{
    L.validate();
    if (!(r > 0))
        throw InvalidArgument("region_Q: r must be positive");
    RegionQ q;
    q.carrier = L;
    q.r = r;
    q.ell = radial_ell(L);
    q.radial = is_radial(L);
    if (q.radial)
    {
        q.threshold = region_O_radius(L, r) + 2 * q.ell;
        q.explicit_threshold = q.threshold;
    }
    if (L.kind == CarrierKind::lightcone4d)
    {
        q.explicit_threshold = (sqrt2 + 3) * L.ell;
        // Points x = (0, d sqrt2, 0, 0) have dist(x, V) = d.
        for (int k = 0; k <= 20; ++k)
        {
            double d = q.explicit_threshold * (1.01 + 0.05 * k);
            RealVec x{0, d * sqrt2, 0, 0};
            q.explicit_contained = q.explicit_contained && q.membership(x).member;
        }
    }
    return q;
}

//---------------------------------------------------------------------------//
Membership tube_membership(std::span<const cplx> z, TubeKind which, const TubeParams& params)
{
    if (!(params.r > 0))
        throw InvalidArgument("tube_membership: r must be positive");
    RealVec y = imag_part(z);
    double m = 0;
    switch (which)
    {
    case TubeKind::V1: m = params.r - dist_to_cone(y, params.gamma); break;
    case TubeKind::V2: m = params.r - dist_to_cone(y, params.gamma.negated()); break;
    case TubeKind::strip: m = params.strip - norm2(y); break;
    case TubeKind::Z: {
        if (!params.carrier)
            throw InvalidArgument("tube_membership: Z requires a carrier");
        const CarrierSet& L = *params.carrier;
        require_same_dim(z.size(), static_cast<std::size_t>(L.dim()), "tube_membership");
        const double r2 = params.r * params.r;
        auto term = [&](std::span<const cplx> w) {
            double re2 = 0, im2 = 0;
            for (std::size_t i = 0; i < z.size(); ++i)
            {
                re2 += std::norm((z[i] - w[i]).real());
                im2 += std::norm((z[i] - w[i]).imag());
            }
            return r2 + re2 - im2;
        };
        if (L.kind == CarrierKind::box1d)
        {
            double d = std::max({0.0, L.a - z[0].real(), z[0].real() - L.b});
            double h = std::abs(z[0].imag()) + L.ell;
            m = r2 + d * d - h * h;
        }
        else
        {
            auto pts = L.kind == CarrierKind::pointcloud ? L.points : L.sample(params.z_samples, L.seed);
            m = std::numeric_limits<double>::infinity();
            for (const auto& w : pts)
                m = std::min(m, term(w));
        }
        break;
    }
    }
    return {m > 0, m};
}

InclusionReport imaginary_inclusion_check(const CarrierSet& L, double r, std::size_t count,
                                          std::uint64_t seed, double x_range)
{
    L.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const auto n = static_cast<std::size_t>(L.dim());
    double center = L.kind == CarrierKind::box1d ? 0.5 * (L.a + L.b) : 0.0;
    TubeParams params;
    params.r = r;
    params.carrier = &L;
    InclusionReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k)
    {
        RealVec x(n);
        for (auto& c : x)
            c = center + x_range * unif(rng);
        double g = g_r(x, L, r).value;
        if (!(g > 0))
            continue;
        RealVec u = random_direction(n, rng);
        double len = g * 0.5 * (1 + unif(rng)) * (1 - 1e-9);
        ComplexVec z(n);
        for (std::size_t i = 0; i < n; ++i)
            z[i] = {x[i], len * u[i]};
        auto m = tube_membership(z, TubeKind::Z, params);
        ++rep.tested;
        if (!m.member)
            ++rep.violations;
        rep.worst_margin = std::min(rep.worst_margin, m.margin);
    }
    return rep;
}

//---------------------------------------------------------------------------//
double WRegion::w_margin(std::span<const double> y) const
{
    return std::max(r - dist_to_cone(y, gamma), r + delta - norm2(y));
}

Membership WRegion::w_membership(std::span<const double> y) const
{
    double m = w_margin(y);
    return {m > 0, m};
}

Membership WRegion::intersection_membership(std::span<const double> y) const
{
    double worst = std::numeric_limits<double>::infinity();
    RealVec q(y.size());
    for (const auto& w : omegas.points)
    {
        for (std::size_t i = 0; i < y.size(); ++i)
            q[i] = y[i] - r * w[i];
        worst = std::min(worst, w_margin(q));
    }
    worst -= shrink;
    return {worst > 0, worst};
}

WReport w_r_delta_and_gamma_tilde(const Cone& gamma, double r, double delta, const SphereNodes& nodes,
                                  std::uint64_t seed)
{
    gamma.validate();
    if (gamma.n < 1 || gamma.n > 3)
        throw InvalidArgument("w_r_delta: supported dimensions are 1, 2, 3");
    if (!(r > 0))
        throw InvalidArgument("w_r_delta: r must be positive");
    if (!(delta >= 0))
        throw InvalidArgument("w_r_delta: delta must be nonnegative");

    WReport rep;
    WRegion& w = rep.region;
    w.gamma = gamma;
    w.r = r;
    w.delta = delta;
    w.omegas = sphere_rule(gamma.n, nodes);
    if (static_cast<int>(w.omegas.size()) < min_sphere_nodes(gamma.n))
        throw InvalidArgument("w_r_delta: sphere sample has fewer than " + std::to_string(min_sphere_nodes(gamma.n))
                              + " nodes");
    w.shrink = r * w.omegas.max_angular_gap();

    const double ell = gamma.shift;
    rep.condition_rhs = std::hypot(r / sqrt2, r / sqrt2 - ell);
    rep.condition_holds = r + delta > rep.condition_rhs;

    // Gamma samples deeper than the shrink margin: random interior points,
    // points near the vertex and far along the axis.
    const auto n = static_cast<std::size_t>(gamma.n);
    RealVec e = gamma.unit_axis();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<RealVec> pts;
    const double span = 3 * (r + delta + ell);
    for (int k = 0; k < 400; ++k)
    {
        double tau = span * unif(rng);
        RealVec v = random_direction(n, rng);
        double along = dot(v, e);
        for (std::size_t i = 0; i < n; ++i)
            v[i] -= along * e[i];
        double vn = norm2(v);
        double q = unif(rng);
        RealVec y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = gamma.sign * ((ell + tau) * e[i] + (vn > 0 ? tau * q * v[i] / vn : 0.0));
        pts.push_back(std::move(y));
    }
    for (double t : {1e-3, 1e-2, 0.1, 0.5, 10.0})
    {
        RealVec y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = gamma.sign * (ell + t) * e[i];
        pts.push_back(std::move(y));
    }
    for (const auto& y : pts)
    {
        if (gamma.depth(y) <= w.shrink * 1.01)
            continue;
        ++rep.gamma_samples;
        if (!w.intersection_membership(y).member)
            ++rep.gamma_failures;
    }
    // strict containment: a point just below the vertex is also covered
    RealVec below(n);
    for (std::size_t i = 0; i < n; ++i)
        below[i] = gamma.sign * ell * e[i] * (1 - 1e-3);
    bool strict = w.intersection_membership(below).member;
    rep.gamma_contained = rep.gamma_samples > 0 && rep.gamma_failures == 0 && strict;

    // B_delta: points well inside it, with the shrink margin removed
    double inner = delta - w.shrink;
    rep.ball_contained = delta > 0 && inner > 0;
    if (rep.ball_contained)
    {
        RealVec origin(n, 0.0);
        rep.ball_contained = w.intersection_membership(origin).member;
        for (int k = 0; k < 100 && rep.ball_contained; ++k)
        {
            RealVec u = random_direction(n, rng);
            double rad = 0.99 * inner * unif(rng);
            for (auto& c : u)
                c *= rad;
            rep.ball_contained = w.intersection_membership(u).member;
        }
    }
    return rep;
}

HullWitness convex_hull_membership(std::span<const double> y, const Cone& gamma, double r)
{
    gamma.validate();
    if (gamma.n > 2)
        throw InvalidArgument("convex_hull_membership: only n = 1, 2 are supported");
    require_same_dim(y.size(), static_cast<std::size_t>(gamma.n), "convex_hull_membership");
    RealVec e = gamma.unit_axis();
    HullWitness h;
    for (double t = 1; t < 1e12; t *= 2)
    {
        RealVec up(y.begin(), y.end()), lo(y.begin(), y.end());
        for (std::size_t i = 0; i < y.size(); ++i)
        {
            up[i] += gamma.sign * t * e[i];
            lo[i] -= gamma.sign * t * e[i];
        }
        if (dist_to_cone(up, gamma) < r && dist_to_cone(lo, gamma.negated()) < r)
        {
            h.member = true;
            h.upper = std::move(up);
            h.lower = std::move(lo);
            break;
        }
    }
    return h;
}

//---------------------------------------------------------------------------//
double SurfaceS1::f1(std::span<const double> x) const
{
    double g = g_r(x, carrier, r).value;
    double lo = std::hypot(r / sqrt2, r / sqrt2 - ell);
    if (g >= r)
        return 0.0;
    if (g <= lo)
        return ell + delta;
    return (ell + delta) * (r - g) / (r - lo);
}

ComplexVec SurfaceS1::point(std::span<const double> x) const
{
    ComplexVec z = make_point(x, {});
    z[0] += I * f1(x);
    return z;
}

std::string SurfaceS1::describe() const
{
    std::ostringstream os;
    os << "S1 = {x + i f1(x) e1}: f1 = 0 on {g_r > " << r << "}, f1 = " << ell + delta << " on {g_r < "
       << std::hypot(r / sqrt2, r / sqrt2 - ell) << "}, linear in g_r between";
    return os.str();
}

//---------------------------------------------------------------------------//
void RegionReport::write_csv(std::ostream& os) const
{
    if (samples.empty())
        return;
    const std::size_t n = samples.front().x.size();
    for (std::size_t i = 0; i < n; ++i)
        os << "x" << i + 1 << ",";
    os << "margin,member\n";
    auto flags = os.flags();
    os << std::setprecision(12);
    for (const auto& s : samples)
    {
        for (double c : s.x)
            os << c << ",";
        os << s.m.margin << "," << (s.m.member ? 1 : 0) << "\n";
    }
    os.flags(flags);
}

double auto_radius(double ell)
{
    return ell / (sqrt2 - 1) * (1 + 1e-6);
}

}  // namespace eow
