#include "eow/quadrature.hpp"

#include <sstream>

namespace eow
{
//---------------------------------------------------------------------------//
std::size_t ContourSpec::intervals_per_side() const
{
    return static_cast<std::size_t>(std::llround(half_width / step));
}

void ContourSpec::validate() const
{
    if (heights.empty())
        throw InvalidArgument("contour: dimension must be positive");
    if (!(step > 0) || !(half_width > 0))
        throw InvalidArgument("contour: step and half_width must be positive");
    double ratio = half_width / step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
        throw InvalidArgument("contour: half_width must be an integer multiple of step");
    if (!center.empty())
        require_same_dim(center.size(), heights.size(), "contour center");
}

ContourSpec make_contour(RealVec heights, double half_width, double step, RealVec center)
{
    if (!(step > 0))
        throw InvalidArgument("contour: step must be positive");
    ContourSpec c;
    c.heights = std::move(heights);
    c.step = step;
    c.half_width = std::ceil(half_width / step - 1e-9) * step;
    c.center = std::move(center);
    c.validate();
    return c;
}

//---------------------------------------------------------------------------//
namespace
{
void check_finite(cplx v)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("line_integral: non-finite integrand sample");
}

void check_tail(const QuadratureResult& r, double tail_tolerance)
{
    if (r.tail_error > tail_tolerance)
        throw AccuracyError("line_integral: truncation tail above tolerance", r.tail_error);
}
}  // namespace

QuadratureResult line_integral_1d(const std::function<cplx(cplx)>& f, const ContourSpec& contour,
                                  double tail_tolerance)
{
    contour.validate();
    require_same_dim(contour.dim(), 1, "line_integral_1d");
    const std::size_t n_int = 2 * contour.intervals_per_side();
    const double h = contour.step;
    const double x0 = (contour.center.empty() ? 0.0 : contour.center[0]) - contour.half_width;
    const double y = contour.heights[0];

    cplx fine{}, coarse{};
    double shell = 0;
    for (std::size_t k = 0; k <= n_int; ++k)
    {
        cplx v = f({x0 + static_cast<double>(k) * h, y});
        check_finite(v);
        bool end = (k == 0 || k == n_int);
        double w = end ? 0.5 : 1.0;
        fine += w * v;
        if (k % 2 == 0)
            coarse += w * v;
        if (end)
            shell = std::max(shell, std::abs(v));
    }
    QuadratureResult r;
    r.value = fine * h;
    r.halving_error = std::abs(r.value - coarse * (2 * h));
    r.tail_error = shell;
    check_tail(r, tail_tolerance);
    return r;
}

QuadratureResult line_integral(const ComplexFn& f, const ContourSpec& contour, double tail_tolerance)
{
    contour.validate();
    const std::size_t n = contour.dim();
    if (n == 1)
    {
        return line_integral_1d([&f](cplx z) { return f(std::span<const cplx>(&z, 1)); }, contour,
                                tail_tolerance);
    }
    const std::size_t n_int = 2 * contour.intervals_per_side();
    const double h = contour.step;

    RealVec origin(n);
    for (std::size_t j = 0; j < n; ++j)
        origin[j] = (contour.center.empty() ? 0.0 : contour.center[j]) - contour.half_width;

    std::vector<std::size_t> idx(n, 0);
    ComplexVec z(n);
    cplx fine{}, coarse{};
    double shell = 0;
    while (true)
    {
        double w = 1.0;
        bool all_even = true;
        bool on_shell = false;
        for (std::size_t j = 0; j < n; ++j)
        {
            z[j] = {origin[j] + static_cast<double>(idx[j]) * h, contour.heights[j]};
            bool end = (idx[j] == 0 || idx[j] == n_int);
            if (end)
            {
                w *= 0.5;
                on_shell = true;
            }
            all_even = all_even && (idx[j] % 2 == 0);
        }
        cplx v = f(z);
        check_finite(v);
        fine += w * v;
        if (all_even)
            coarse += w * v;
        if (on_shell)
            shell = std::max(shell, std::abs(v));

        std::size_t j = 0;
        while (j < n && ++idx[j] > n_int)
            idx[j++] = 0;
        if (j == n)
            break;
    }
    QuadratureResult r;
    r.value = fine * std::pow(h, static_cast<double>(n));
    r.halving_error = std::abs(r.value - coarse * std::pow(2 * h, static_cast<double>(n)));
    r.tail_error = shell * std::pow(2 * contour.half_width, static_cast<double>(n - 1));
    check_tail(r, tail_tolerance);
    return r;
}

//---------------------------------------------------------------------------//
GaussRule gauss_legendre(int order)
{
    if (order < 1)
        throw InvalidArgument("gauss_legendre: order must be positive");
    GaussRule rule;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 2.0);
    if (order == 1)
        return rule;

    // Legendre P_order and its derivative at x by the three-term recurrence
    auto legendre = [order](double x, double& deriv) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k)
        {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        deriv = order * (x * p1 - p0) / (x * x - 1.0);
        return p1;
    };

    for (int i = 0; i < (order + 1) / 2; ++i)
    {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double deriv = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double dx = legendre(x, deriv) / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        legendre(x, deriv);
        double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

std::vector<PathNode> discretize_polyline(std::span<const cplx> vertices, double panel_length, int order)
{
    if (vertices.size() < 2)
        throw InvalidArgument("discretize_polyline: need at least two vertices");
    if (!(panel_length > 0))
        throw InvalidArgument("discretize_polyline: panel_length must be positive");
    GaussRule rule = gauss_legendre(order);
    std::vector<PathNode> nodes;
    for (std::size_t s = 0; s + 1 < vertices.size(); ++s)
    {
        cplx a = vertices[s], b = vertices[s + 1];
        double len = std::abs(b - a);
        if (len == 0)
            continue;
        auto panels = static_cast<std::size_t>(std::ceil(len / panel_length));
        cplx step = (b - a) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p)
        {
            cplx pa = a + static_cast<double>(p) * step;
            cplx mid = pa + 0.5 * step;
            for (int k = 0; k < order; ++k)
                nodes.push_back({mid + 0.5 * rule.nodes[k] * step, 0.5 * rule.weights[k] * step});
        }
    }
    return nodes;
}

cplx integrate_path(const std::function<cplx(cplx)>& f, std::span<const PathNode> nodes)
{
    cplx sum{};
    for (const auto& node : nodes)
        sum += node.weight * f(node.z);
    return sum;
}

//---------------------------------------------------------------------------//
double sphere_measure(int n)
{
    switch (n)
    {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    case 3: return 4.0 * pi;
    default: throw InvalidArgument("sphere_measure: supported dimensions are 1, 2, 3");
    }
}

SphereRule sphere_rule(int n, const SphereNodes& nodes)
{
    SphereRule rule;
    rule.dim = n;
    switch (n)
    {
    case 1:
        rule.points = {{1.0}, {-1.0}};
        rule.weights = {1.0, 1.0};
        break;
    case 2: {
        if (nodes.circle < 1)
            throw InvalidArgument("sphere_rule: circle nodes must be positive");
        double w = 2.0 * pi / nodes.circle;
        for (int k = 0; k < nodes.circle; ++k)
        {
            double th = 2.0 * pi * k / nodes.circle;
            rule.points.push_back({std::cos(th), std::sin(th)});
            rule.weights.push_back(w);
        }
        break;
    }
    case 3: {
        if (nodes.polar < 1 || nodes.azimuth < 1)
            throw InvalidArgument("sphere_rule: polar/azimuth nodes must be positive");
        GaussRule gl = gauss_legendre(nodes.polar);
        double dphi = 2.0 * pi / nodes.azimuth;
        for (int i = 0; i < nodes.polar; ++i)
        {
            double c = gl.nodes[i];
            double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int k = 0; k < nodes.azimuth; ++k)
            {
                double ph = dphi * (k + 0.5);
                rule.points.push_back({c, s * std::cos(ph), s * std::sin(ph)});
                rule.weights.push_back(gl.weights[i] * dphi);
            }
        }
        break;
    }
    default: throw InvalidArgument("sphere_rule: supported dimensions are 1, 2, 3");
    }
    return rule;
}

double SphereRule::max_angular_gap() const
{
    switch (dim)
    {
    case 1: return 0.0;
    case 2: return pi / static_cast<double>(points.size());
    default: {
        // Brute-force covering radius over a fixed probe set.
        double worst = 0;
        const int probes = 40;
        for (int i = 0; i <= probes; ++i)
        {
            double c = -1.0 + 2.0 * i / probes;
            double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int k = 0; k < 2 * probes; ++k)
            {
                double ph = pi * k / probes;
                RealVec u{c, s * std::cos(ph), s * std::sin(ph)};
                double best = -1;
                for (const auto& p : points)
                    best = std::max(best, dot(u, p));
                worst = std::max(worst, std::acos(std::clamp(best, -1.0, 1.0)));
            }
        }
        return worst;
    }
    }
}

cplx sphere_average(const std::function<cplx(std::span<const double>)>& g, const SphereRule& rule)
{
    cplx sum{};
    for (std::size_t k = 0; k < rule.size(); ++k)
        sum += rule.weights[k] * g(rule.points[k]);
    return sum;
}

cplx sphere_average(const std::function<cplx(std::span<const double>)>& g, int n,
                    const SphereNodes& nodes)
{
    return sphere_average(g, sphere_rule(n, nodes));
}

//---------------------------------------------------------------------------//
LadderSpec LadderSpec::geometric(double t0, double ratio, int rungs, int order)
{
    LadderSpec spec;
    spec.order = order;
    double t = t0;
    for (int k = 0; k < rungs; ++k, t *= ratio)
        spec.t.push_back(t);
    spec.validate();
    return spec;
}

void LadderSpec::validate() const
{
    if (t.size() < 3)
        throw InvalidArgument("ladder: at least 3 rungs are required");
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        if (!(t[k] > 0))
            throw InvalidArgument("ladder: t values must be positive");
        if (k > 0 && !(t[k] < t[k - 1]))
            throw InvalidArgument("ladder: t values must be strictly decreasing");
    }
    if (order < 1 || static_cast<std::size_t>(order) >= t.size())
        throw InvalidArgument("ladder: order must be in [1, rungs - 1]");
}

LadderLimit ladder_limit(std::span<const cplx> values, const LadderSpec& ladder)
{
    ladder.validate();
    require_same_dim(values.size(), ladder.t.size(), "ladder_limit");
    const std::size_t m = static_cast<std::size_t>(ladder.order) + 1;
    const std::size_t first = values.size() - m;

    LadderLimit out;
    for (const auto& v : values.subspan(first))
    {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        {
            out.converged = false;
            out.limit = v;
            out.confidence = std::numeric_limits<double>::infinity();
            out.diagnosis = "non-finite rung value";
            return out;
        }
    }

    // Neville table extrapolated to t = 0, updated in place column by column
    ComplexVec col(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
    RealVec t(ladder.t.begin() + static_cast<std::ptrdiff_t>(first), ladder.t.end());
    cplx previous = col[m - 1];
    for (std::size_t level = 1; level < m; ++level)
    {
        if (level + 1 == m)
            previous = col[m - 1];
        for (std::size_t k = m - 1; k >= level; --k)
            col[k] += (col[k] - col[k - 1]) * (t[k] / (t[k - level] - t[k]));
    }
    out.limit = col[m - 1];
    out.confidence = std::abs(out.limit - previous);

    // Growing successive differences over the fitted rungs signal divergence.
    const std::size_t n = values.size();
    double d_prev = std::abs(values[n - 2] - values[n - 3]);
    double d_last = std::abs(values[n - 1] - values[n - 2]);
    double floor = 1e-13 * (1.0 + std::abs(values[n - 1]));
    if (d_last > d_prev && d_last > floor)
    {
        out.converged = false;
        std::ostringstream os;
        os << "corrections growing: |dv| " << d_prev << " -> " << d_last;
        out.diagnosis = os.str();
    }
    return out;
}

}  // namespace eow
