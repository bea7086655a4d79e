#include "eow/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eow/fixtures.hpp"
#include "eow/geometry.hpp"
#include "eow/kernels.hpp"
#include "eow/pipeline.hpp"

namespace eow
{
namespace
{
using json = nlohmann::ordered_json;

json cj(cplx z)
{
    return json::array({z.real(), z.imag()});
}

// One check line plus its JSON record.
struct Report
{
    json checks = json::array();
    json results = json::object();
    std::vector<std::string> lines;
    bool pass = true;

    void check(const std::string& name, bool ok, const std::string& detail, json data = json::object())
    {
        lines.push_back(std::string(ok ? "PASS " : "FAIL ") + name + ": " + detail);
        data["name"] = name;
        data["pass"] = ok;
        data["detail"] = detail;
        checks.push_back(std::move(data));
        pass = pass && ok;
    }
};

std::string num(double v, int prec = 3)
{
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

std::string num(cplx z)
{
    return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

class Output
{
  public:
    Output(const std::string& path, std::ostream& stdout_stream)
    {
        if (path == "-")
            os_ = &stdout_stream;
        else if (!path.empty())
        {
            file_.open(path);
            if (!file_)
                throw std::ios_base::failure("cannot open '" + path + "' for writing");
            os_ = &file_;
        }
    }
    explicit operator bool() const { return os_ != nullptr; }
    std::ostream& stream() { return *os_; }

  private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

double tol_or(const RunConfig& c, double dflt)
{
    return c.tolerance.value_or(dflt);
}

double radius(const RunConfig& c, double ell, double dflt)
{
    if (c.r.empty())
        return dflt;
    if (c.r == "auto")
        return auto_radius(ell);
    std::size_t used = 0;
    double v = 0;
    try
    {
        v = std::stod(c.r, &used);
    }
    catch (const std::exception&)
    {
        used = 0;
    }
    if (used != c.r.size() || !(v > 0))
        throw InvalidArgument("--r must be a positive number or 'auto'");
    return v;
}

CarrierSet parse_box(const std::string& s)
{
    auto v = parse_list(s);
    if (v.size() != 3)
        throw InvalidArgument("--box expects a,b,ell");
    return CarrierSet::box1d(v[0], v[1], v[2]);
}

LadderSpec ladder_from(const RunConfig& c, double t0, int rungs, int order)
{
    return LadderSpec::geometric(c.t0 > 0 ? c.t0 : t0, 0.5, c.rungs > 0 ? c.rungs : rungs, order);
}

//---------------------------------------------------------------------------//
// kernel
//---------------------------------------------------------------------------//

Report run_kernel(const RunConfig& c, Output& csv)
{
    Report rep;
    KernelSpec spec;
    spec.n = c.n;
    spec.r = radius(c, 0, 1.0);
    spec.cutoff = c.cutoff;
    spec.step = c.step;
    spec.tolerance = tol_or(c, 1e-8);
    if (c.strategy == "closed")
        spec.strategy = KernelStrategy::closed_form_1d;
    else if (c.strategy == "fourier")
        spec.strategy = KernelStrategy::fourier_quadrature;
    else
        throw InvalidArgument("--strategy must be 'closed' or 'fourier'");
    spec.validate();

    auto axes = std::vector<std::string>{};
    {
        auto comma = c.grid.find(',');
        if (comma == std::string::npos)
            throw InvalidArgument("--grid expects re_lo:re_hi:step,im_lo:im_hi:step");
        axes = {c.grid.substr(0, comma), c.grid.substr(comma + 1)};
    }
    RealVec xs = parse_range(axes[0]).values();
    RealVec ys = parse_range(axes[1]).values();

    std::vector<cplx> pts;
    for (double y : ys)
        for (double x : xs)
            pts.emplace_back(x, y);

    struct Row
    {
        cplx z, k;
        double err = 0;
        std::string failure;
    };
    auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
        Row row{pts[i], {}, 0, ""};
        ComplexVec z(static_cast<std::size_t>(spec.n), 0.0);
        z[0] = pts[i];
        try
        {
            auto kv = kernel_eval(z, spec);
            row.k = kv.value;
            row.err = kv.error;
        }
        catch (const AccuracyError& e)
        {
            row.err = e.estimate();
            row.failure = e.what();
        }
        catch (const DomainError& e)
        {
            row.failure = e.what();
        }
        return row;
    });

    std::size_t failures = 0;
    double max_err = 0, max_dev = 0;
    for (const auto& row : rows)
    {
        if (!row.failure.empty())
            ++failures;
        max_err = std::max(max_err, row.err);
        if (spec.n == 1 && row.failure.empty())
            max_dev = std::max(max_dev, std::abs(row.k - kernel_1d(row.z, spec.r)));
    }
    rep.check("kernel grid evaluated", failures == 0,
              std::to_string(rows.size() - failures) + "/" + std::to_string(rows.size()) + " points, max error estimate "
                  + num(max_err),
              {{"points", rows.size()}, {"failures", failures}, {"max_error_estimate", max_err}});
    if (spec.n == 1)
        rep.check("closed form agreement", failures == 0 && max_dev < spec.tolerance,
                  "max |K - (1/4)sech(pi z/2r)/r| = " + num(max_dev) + " (tol " + num(spec.tolerance) + ")",
                  {{"max_deviation", max_dev}, {"tolerance", spec.tolerance}});
    rep.results = {{"n", spec.n},
                   {"r", spec.r},
                   {"strategy", to_string(spec.strategy)},
                   {"step", spec.resolved_step()},
                   {"points", rows.size()}};

    if (csv)
    {
        auto& os = csv.stream();
        os << "re_z,im_z,re_K,im_K,err_estimate\n" << std::setprecision(12);
        for (const auto& row : rows)
            os << row.z.real() << "," << row.z.imag() << "," << row.k.real() << "," << row.k.imag() << "," << row.err
               << "\n";
    }
    return rep;
}

//---------------------------------------------------------------------------//
// geometry
//---------------------------------------------------------------------------//

Report run_geometry(const RunConfig& c, Output& csv)
{
    Report rep;
    double ell = c.ell.value_or(1.0);
    RealVec ds = parse_range(c.scan).values();
    double tol = tol_or(c, 1e-2);

    CarrierSet L;
    bool cone = c.carrier == "lightcone4d";
    if (cone)
        L = CarrierSet::lightcone4d(ell, c.samples, c.seed);
    else if (c.carrier == "box1d")
        L = parse_box(c.box);
    else
        throw InvalidArgument("--carrier must be lightcone4d or box1d");
    if (!cone)
        ell = L.ell;
    double r = radius(c, ell, auto_radius(ell));
    RegionQ Q = region_Q(L, r);

    struct Row
    {
        double d;
        RealVec x;
        GrValue g;
        Membership o, q;
    };
    auto rows = parallel_map<Row>(ds.size(), [&](std::size_t i) {
        Row row;
        row.d = ds[i];
        row.x = cone ? RealVec{0.0, ds[i] * sqrt2, 0.0, 0.0} : RealVec{L.b + ds[i]};
        row.g = g_r(row.x, L, r);
        row.o = region_O_membership(row.x, L, r);
        row.q = Q.membership(row.x);
        return row;
    });

    double o_thr = region_O_radius(L, r);
    double q_thr = Q.explicit_threshold;
    if (cone)
    {
        o_thr = (sqrt2 + 1) * ell;
        q_thr = (sqrt2 + 3) * ell;
    }
    auto band_check = [&](const char* name, double thr, auto member) {
        std::size_t bad = 0;
        double first = -1;
        for (const auto& row : rows)
        {
            bool m = member(row);
            if (m && first < 0)
                first = row.d;
            if ((row.d > thr * (1 + tol) && !m) || (row.d < thr * (1 - tol) && m))
                ++bad;
        }
        rep.check(name, bad == 0,
                  "threshold " + num(thr, 6) + ", first member at dist " + num(first, 6) + ", "
                      + std::to_string(bad) + " misclassified outside the +-" + num(tol) + " band",
                  {{"threshold", thr}, {"first_member", first}, {"misclassified", bad}});
    };
    band_check("region O threshold", o_thr, [](const Row& r) { return r.o.member; });
    band_check("region Q threshold", q_thr, [](const Row& r) { return r.q.member; });

    double worst = -1e300;
    for (const auto& row : rows)
        worst = std::max(worst, row.g.value - row.g.bound);
    rep.check("g_r below its bound", worst <= 1e-3, "max(g_r - bound) = " + num(worst),
              {{"max_excess", worst}});
    rep.results = {{"carrier", to_string(L.kind)}, {"ell", ell}, {"r", r}, {"points", rows.size()}};

    if (csv)
    {
        auto& os = csv.stream();
        os << "dist";
        for (std::size_t j = 0; j < (cone ? 4u : 1u); ++j)
            os << ",x" << j + 1;
        os << ",g_r,g_r_bound,in_O,margin_O,in_Q,margin_Q\n" << std::setprecision(12);
        for (const auto& row : rows)
        {
            os << row.d;
            for (double v : row.x)
                os << "," << v;
            os << "," << row.g.value << "," << row.g.bound << "," << row.o.member << "," << row.o.margin << ","
               << row.q.member << "," << row.q.margin << "\n";
        }
    }
    return rep;
}

//---------------------------------------------------------------------------//
// reproduce
//---------------------------------------------------------------------------//

Report run_reproduce(const RunConfig& c)
{
    Report rep;
    if (!c.matrix)
    {
        auto phi = parse_test_function(c.phi);
        double r = radius(c, 0, 1.0);
        double tol = tol_or(c, 1e-6);
        auto res = reproducing_check(phi, r, c.R, c.t);
        auto diag = reproducing_check_unit_shift(phi, r, c.R, c.t);
        rep.check("reproducing identity", res.residual < tol,
                  c.phi + ", r=" + num(r) + ", R=" + num(c.R) + ", t=" + num(c.t) + ": residual " + num(res.residual)
                      + " (tol " + num(tol) + ")",
                  {{"value", cj(res.value)},
                   {"target", cj(res.target)},
                   {"residual", res.residual},
                   {"quadrature_error", res.quadrature_error},
                   {"tolerance", tol},
                   {"unit_shift_residual", diag.residual}});
        return rep;
    }
    double tol = tol_or(c, 1e-5);
    struct Case
    {
        double s, r, ratio, t;
    };
    std::vector<Case> cases;
    for (double s : {0.5, 1.0, 2.0})
        for (double r : {1.0, 2.0})
            for (double q : {0.25, 0.5, 1.0})
                for (double t : {0.0, 0.7, -0.7})
                    cases.push_back({s, r, q, t});
    auto res = parallel_map<ReproducingResult>(cases.size(), [&](std::size_t i) {
        const auto& k = cases[i];
        return reproducing_check(TestFunction::gaussian(0.0, k.s), k.r, k.ratio * k.r, k.t);
    });
    double worst = 0;
    json rows = json::array();
    for (std::size_t i = 0; i < cases.size(); ++i)
    {
        worst = std::max(worst, res[i].residual);
        rows.push_back({{"width", cases[i].s},
                        {"r", cases[i].r},
                        {"R", cases[i].ratio * cases[i].r},
                        {"t", cases[i].t},
                        {"residual", res[i].residual}});
    }
    rep.check("reproducing identity matrix", worst < tol,
              std::to_string(cases.size()) + " cases, max residual " + num(worst) + " (tol " + num(tol) + ")",
              {{"max_residual", worst}, {"tolerance", tol}});
    rep.results["cases"] = rows;
    return rep;
}

//---------------------------------------------------------------------------//
// global-eow
//---------------------------------------------------------------------------//

Report run_global(const RunConfig& c, Output& csv)
{
    Report rep;
    auto fx = parse_fixture(c.fixture.empty() ? "poly:0,2,0,1" : c.fixture);
    double ell = c.ell.value_or(0.5);
    double r = radius(c, ell, 2.0);
    Cone up = Cone::forward(1, ell);
    rep.results = {{"fixture", fx.tag}, {"kind", to_string(fx.kind)}, {"ell", ell}, {"r", r}};

    if (fx.kind == FixtureKind::delta)
    {
        auto U = regularize(Ultrahyperfunction::from_masses(fx.masses), r);
        auto H = reconstruct(glue({GluePiece{{U}, "U"}}), r);
        double worst = 0;
        for (cplx z : reconstruction_grid(ell))
        {
            cplx direct{};
            for (const auto& m : fx.masses)
                direct += m.c * (kernel_1d(z - m.w[0] + I * r, r) + kernel_1d(z - m.w[0] - I * r, r));
            worst = std::max(worst, std::abs(H(z) - direct));
        }
        rep.check("point-mass reconstruction", worst < 1e-12, "max deviation from direct kernel sums " + num(worst),
                  {{"max_deviation", worst}});
        return rep;
    }

    BoundaryFunction F1, F2;
    if (fx.kind == FixtureKind::polynomial || fx.kind == FixtureKind::zero)
    {
        ComplexVec a = fx.kind == FixtureKind::zero ? ComplexVec{0.0} : fx.coeffs;
        F1 = BoundaryFunction::polynomial(a, up);
        F2 = BoundaryFunction::polynomial(a, up.negated());
    }
    else if (fx.kind == FixtureKind::pole)
    {
        F1 = BoundaryFunction::rational({fx.pole}, {1.0}, up);
        F2 = BoundaryFunction::rational({fx.pole}, {1.0}, up.negated());
    }
    else
        throw InvalidArgument("global-eow: fixture '" + fx.tag + "' is not a global fixture");

    GlobalOptions opts;
    opts.r = r;
    if (c.tolerance)
        opts.overlap_tolerance = opts.match_tolerance = *c.tolerance;
    Evaluator expected;
    if (fx.has_closed_form())
        expected = [&fx](cplx z) { return fx.closed_form(z); };
    auto run = global_eow(F1, F2, expected, opts);

    const auto& ov = run.overlap;
    std::string ov_detail = "max |U1 - U2| = " + num(ov.max_deviation) + " at " + num(ov.worst_point) + " over " + std::to_string(ov.points.size()) + " points";
    json ov_data = {{"max_deviation", ov.max_deviation}, {"tolerance", ov.tolerance}, {"worst_point", cj(ov.worst_point)}};
    if (fx.kind == FixtureKind::pole)
    {
        double oracle = 2 * pi * std::abs(kernel_1d(ov.worst_point - fx.pole, r));
        ov_detail += ", residue oracle 2 pi |K_r(z - w)| = " + num(oracle);
        ov_data["residue_oracle"] = oracle;
    }
    rep.check("overlap agreement", ov.pass, ov_detail, ov_data);
    if (expected)
        rep.check("reconstruction matches closed form", run.reconstruction_pass,
                  "max |H - F| = " + num(run.reconstruction_max) + " on " + std::to_string(run.reconstruction.size())
                      + " points",
                  {{"max_deviation", run.reconstruction_max}, {"tolerance", opts.reconstruct_tolerance}});
    for (const auto* m : {&run.match_upper, &run.match_lower})
    {
        json rows = json::array();
        for (const auto& row : m->rows)
            rows.push_back({{"phi", row.label}, {"deviation", row.deviation}});
        rep.check(m == &run.match_upper ? "boundary match (upper tube)" : "boundary match (lower tube)", m->pass,
                  "max deviation " + num(m->max_deviation) + " over " + std::to_string(m->rows.size())
                      + " Gaussians at height " + num(m->height),
                  {{"max_deviation", m->max_deviation}, {"tolerance", m->tolerance}, {"rows", rows}});
    }
    rep.check("Cauchy-Riemann residual", run.cauchy_riemann_max < 1e-4, "max " + num(run.cauchy_riemann_max),
              {{"max_residual", run.cauchy_riemann_max}});

    if (csv)
    {
        auto& os = csv.stream();
        os << "re_z,im_z,re_H,im_H,re_F,im_F,deviation\n" << std::setprecision(12);
        for (const auto& pc : run.reconstruction)
            os << pc.z.real() << "," << pc.z.imag() << "," << pc.value.real() << "," << pc.value.imag() << ","
               << pc.expected.real() << "," << pc.expected.imag() << "," << pc.deviation << "\n";
    }
    return rep;
}

//---------------------------------------------------------------------------//
// local-eow
//---------------------------------------------------------------------------//

RealVec default_xis()
{
    return {-5, -3, -2, -1.5, -1.2, 1.2, 1.5, 2, 3, 5};
}

Report run_local(const RunConfig& c, Output& csv)
{
    Report rep;
    auto fx = parse_fixture(c.fixture.empty() ? "chilbert:w=0+0.3i" : c.fixture);
    if (fx.kind != FixtureKind::cauchy_hilbert && fx.kind != FixtureKind::zero)
        throw InvalidArgument("local-eow: fixture must be chilbert:... or zero");
    CarrierSet L = parse_box(c.box);
    if (c.ell)
        L.ell = *c.ell;
    double r = radius(c, L.ell, 1.25);
    RealVec xis = c.xi.empty() ? default_xis() : parse_list(c.xi);
    auto ladder = ladder_from(c, 0.5, 10, 2);
    double tol = tol_or(c, 1e-5);

    auto run = local_eow(fx.masses, L, r, xis, ladder, tol);
    json rows = json::array();
    for (const auto& row : run.probe.rows)
    {
        rep.check("probe equality xi=" + num(row.xi), row.pass,
                  "|h1 - h2| = " + num(row.gap) + ", max oracle gap " + num(row.oracle_gap),
                  {{"xi", row.xi},
                   {"h1", cj(row.h1)},
                   {"h2", cj(row.h2)},
                   {"direct1", cj(row.direct1)},
                   {"direct2", cj(row.direct2)},
                   {"oracle", cj(row.oracle.value_or(cplx(0)))},
                   {"gap", row.gap},
                   {"oracle_gap", row.oracle_gap},
                   {"ladder_confidence", std::max(row.confidence1, row.confidence2)}});
    }
    rep.check("Cauchy-Riemann residual", run.cauchy_riemann_max < 1e-4, "max " + num(run.cauchy_riemann_max),
              {{"max_residual", run.cauchy_riemann_max}});
    const auto& lc = run.continuation;
    rep.results = {{"fixture", fx.tag},
                   {"carrier", {L.a, L.b, L.ell}},
                   {"r", r},
                   {"r_over_ell", r / L.ell},
                   {"lwedge_threshold", lc.lwedge_threshold},
                   {"r_exceeds_lwedge_threshold", r > lc.lwedge_threshold},
                   {"ladder", ladder.t},
                   {"provenance_H1", lc.H1.provenance},
                   {"provenance_H2", lc.H2.provenance}};

    if (csv)
    {
        auto& os = csv.stream();
        os << "xi,re_h1,im_h1,re_h2,im_h2,gap,oracle_gap\n" << std::setprecision(12);
        for (const auto& row : run.probe.rows)
            os << row.xi << "," << row.h1.real() << "," << row.h1.imag() << "," << row.h2.real() << ","
               << row.h2.imag() << "," << row.gap << "," << row.oracle_gap << "\n";
    }
    return rep;
}

//---------------------------------------------------------------------------//
// carrier-probe
//---------------------------------------------------------------------------//

Report run_probe(const RunConfig& c, Output& csv)
{
    Report rep;
    auto fx = parse_fixture(c.fixture.empty() ? "delta:w=0+0.5i" : c.fixture);
    if (fx.kind != FixtureKind::delta && fx.kind != FixtureKind::cauchy_hilbert && fx.kind != FixtureKind::zero)
        throw InvalidArgument("carrier-probe: fixture must be delta:..., chilbert:... or zero");
    auto u = Ultrahyperfunction::from_masses(fx.masses);
    CarrierSet L;
    if (fx.masses.empty() || c.carrier == "box1d")
        L = parse_box(c.box);
    else
    {
        std::vector<ComplexVec> pts;
        for (const auto& m : fx.masses)
            pts.push_back(m.w);
        L = CarrierSet::pointcloud(pts);
    }
    RealVec xis = c.xi.empty() ? RealVec{-1, -0.8, -0.6, -0.4, -0.2, 0, 0.2, 0.4, 0.6, 0.8, 1} : parse_list(c.xi);
    auto ladder = ladder_from(c, 0.5, 12, 2);

    json rows = json::array();
    for (double xi : xis)
    {
        auto p = carrier_probe(u, L, RealVec{xi}, ladder);
        std::string expect = p.exponent < 0 ? "decays" : p.exponent > 0 ? "grows" : "";
        bool ok = expect.empty() || p.verdict == expect;
        rep.check("carrier probe xi=" + num(xi), ok,
                  "verdict " + p.verdict + ", exponent " + num(p.exponent, 4)
                      + (expect.empty() ? " (boundary case)" : ", expected " + expect),
                  {{"xi", xi}, {"verdict", p.verdict}, {"exponent", p.exponent}, {"magnitude", p.magnitude}});
        if (csv)
            for (std::size_t k = 0; k < p.t.size(); ++k)
                rows.push_back({xi, p.t[k], p.magnitude[k], p.bound[k]});
    }
    rep.results = {{"fixture", fx.tag}, {"carrier", to_string(L.kind)}, {"ladder", ladder.t}};
    if (csv)
    {
        auto& os = csv.stream();
        os << "xi,t,magnitude,bound\n" << std::setprecision(12);
        for (const auto& row : rows)
            os << row[0].get<double>() << "," << row[1].get<double>() << "," << row[2].get<double>() << ","
               << row[3].get<double>() << "\n";
    }
    return rep;
}

json config_json(const RunConfig& c)
{
    json j = {{"subcommand", c.subcommand}};
    auto put = [&](const char* k, const std::string& v) {
        if (!v.empty())
            j[k] = v;
    };
    put("fixture", c.fixture);
    put("phi", c.phi);
    put("carrier", c.carrier);
    put("box", c.box);
    j["n"] = c.n;
    if (c.ell)
        j["ell"] = *c.ell;
    put("r", c.r);
    j["R"] = c.R;
    j["t"] = c.t;
    put("grid", c.grid);
    put("scan", c.scan);
    put("xi", c.xi);
    put("strategy", c.strategy);
    j["matrix"] = c.matrix;
    j["cutoff"] = c.cutoff;
    j["step"] = c.step;
    j["t0"] = c.t0;
    j["rungs"] = c.rungs;
    j["samples"] = c.samples;
    if (c.tolerance)
        j["tolerance"] = *c.tolerance;
    j["seed"] = c.seed;
    return j;
}

}  // namespace

void RunConfig::validate() const
{
    static const std::vector<std::string> subs{"kernel",    "geometry",  "reproduce",
                                               "global-eow", "local-eow", "carrier-probe"};
    if (std::find(subs.begin(), subs.end(), subcommand) == subs.end())
        throw InvalidArgument("unknown subcommand '" + subcommand + "'");
    if (tolerance && !(*tolerance > 0))
        throw InvalidArgument("--tol must be positive");
    if (ell && !(*ell > 0))
        throw InvalidArgument("--ell must be positive");
    if (cutoff < 0 || step < 0 || t0 < 0 || rungs < 0)
        throw InvalidArgument("quadrature overrides must be non-negative");
    if (!json_path.empty() && json_path == csv_path)
        throw InvalidArgument("--json and --csv must differ");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    Report rep;
    std::ostream* summary = &out;
    try
    {
        config.validate();
        // validate fixture strings up front so tag errors are usage errors
        if (!config.fixture.empty())
            parse_fixture(config.fixture);
        if (config.subcommand == "reproduce" && !config.matrix)
            parse_test_function(config.phi);

        std::string csv_path = config.csv_path;
        if (config.subcommand == "kernel" && csv_path.empty())
            csv_path = "-";
        if (csv_path == "-" || config.json_path == "-")
            summary = &err;
        Output csv(csv_path, out);
        Output js(config.json_path, out);

        try
        {
            if (config.subcommand == "kernel")
                rep = run_kernel(config, csv);
            else if (config.subcommand == "geometry")
                rep = run_geometry(config, csv);
            else if (config.subcommand == "reproduce")
                rep = run_reproduce(config);
            else if (config.subcommand == "global-eow")
                rep = run_global(config, csv);
            else if (config.subcommand == "local-eow")
                rep = run_local(config, csv);
            else
                rep = run_probe(config, csv);
        }
        catch (const InvalidArgument&)
        {
            throw;
        }
        catch (const std::ios_base::failure&)
        {
            throw;
        }
        catch (const std::exception& e)
        {
            // numerical failures are results, not usage errors
            rep.check(config.subcommand, false, std::string("error: ") + e.what());
        }

        for (const auto& line : rep.lines)
            *summary << line << "\n";
        *summary << (rep.pass ? "ALL PASS" : "SOME FAIL") << "\n";

        if (js)
        {
            json report = {{"schema_version", report_schema_version},
                           {"subcommand", config.subcommand},
                           {"config", config_json(config)},
                           {"results", rep.results},
                           {"checks", rep.checks},
                           {"pass", rep.pass}};
            js.stream() << report.dump(2) << "\n";
        }
    }
    catch (const InvalidArgument& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::ios_base::failure& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return rep.pass ? exit_pass : exit_fail;
}

//---------------------------------------------------------------------------//
// Argument parsing
//---------------------------------------------------------------------------//

namespace
{
// --config FILE.json: keys are long option names, inserted before the user's
// own arguments so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[++i];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
        else
            rest.push_back(args[i]);
    }
    if (path.empty())
        return rest;
    std::ifstream is(path);
    if (!is)
        throw InvalidArgument("cannot read config '" + path + "'");
    json j;
    try
    {
        j = json::parse(is);
    }
    catch (const json::parse_error& e)
    {
        throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
    }
    if (!j.is_object())
        throw InvalidArgument("config '" + path + "' must be a JSON object");
    std::vector<std::string> injected;
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        if (it.key() == "subcommand")
            continue;
        std::string flag = "--" + it.key();
        if (it->is_boolean())
        {
            if (it->get<bool>())
                injected.push_back(flag);
        }
        else if (it->is_string())
            injected.push_back(flag + "=" + it->get<std::string>());
        else if (it->is_number())
            injected.push_back(flag + "=" + it->dump());
        else
            throw InvalidArgument("config key '" + it.key() + "' must be a string, number or boolean");
    }
    // subcommand (if any) comes first
    std::vector<std::string> out;
    std::size_t start = 0;
    if (!rest.empty() && rest[0].rfind("-", 0) != 0)
    {
        out.push_back(rest[0]);
        start = 1;
    }
    else if (j.contains("subcommand") && j["subcommand"].is_string())
        out.push_back(j["subcommand"].get<std::string>());
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), rest.begin() + static_cast<long>(start), rest.end());
    return out;
}

// "--opt -5:5" would be read as two flags; glue values that start with '-'
// onto their option.
std::vector<std::string> join_dash_values(const std::vector<std::string>& args, const CLI::App& app)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        const auto& a = args[i];
        if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < args.size()
            && args[i + 1].size() > 1 && args[i + 1][0] == '-' && args[i + 1][1] != '-')
        {
            const CLI::Option* opt = nullptr;
            for (const auto* sub : app.get_subcommands({}))
            {
                try
                {
                    opt = sub->get_option_no_throw(a);
                }
                catch (...)
                {
                    opt = nullptr;
                }
                if (opt)
                    break;
            }
            if (opt && opt->get_type_size() != 0)
            {
                out.push_back(a + "=" + args[i + 1]);
                ++i;
                continue;
            }
        }
        out.push_back(a);
    }
    return out;
}
}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"Edge-of-the-wedge numerics: kernels, geometry, regularization and continuation checks", "eow"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string ell_text, tol_text;
    auto common = [&](CLI::App* s) {
        s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        s->add_option("--json", c.json_path, "Write the JSON report here ('-' for stdout)");
        s->add_option("--csv", c.csv_path, "Write the CSV grid here ('-' for stdout)");
        s->add_option("--tol", tol_text, "Tolerance override");
        s->add_option("--seed", c.seed, "Random seed for sampling-based geometry");
    };

    auto* kernel = app.add_subcommand("kernel", "Evaluate the kernel on a grid");
    kernel->add_option("--n", c.n, "Dimension (1-3)");
    kernel->add_option("--r", c.r, "Scale r");
    kernel->add_option("--grid", c.grid, "re_lo:re_hi:step,im_lo:im_hi:step");
    kernel->add_option("--strategy", c.strategy, "fourier | closed");
    kernel->add_option("--cutoff", c.cutoff, "Fourier cutoff X (0 = automatic)");
    kernel->add_option("--step", c.step, "Fourier step h (0 = automatic)");
    common(kernel);

    auto* geometry = app.add_subcommand("geometry", "Scan region O / Q membership and g_r");
    geometry->add_option("--carrier", c.carrier, "lightcone4d | box1d");
    geometry->add_option("--box", c.box, "a,b,ell for box1d");
    geometry->add_option("--ell", ell_text, "Carrier size ell");
    geometry->add_option("--r", c.r, "Radius or 'auto'");
    geometry->add_option("--scan-dist", c.scan, "lo:hi:step distances");
    geometry->add_option("--samples", c.samples, "Sampling density for g_r");
    common(geometry);

    auto* reproduce = app.add_subcommand("reproduce", "Check the reproducing identity");
    reproduce->add_option("--phi", c.phi, "Test function tag");
    reproduce->add_option("--r", c.r, "Kernel scale r");
    reproduce->add_option("--R", c.R, "Contour shift R (0 < R <= r)");
    reproduce->add_option("--t", c.t, "Evaluation point");
    reproduce->add_flag("--matrix", c.matrix, "Run the full fixture matrix");
    common(reproduce);

    auto* global = app.add_subcommand("global-eow", "Global continuation across the real axis");
    global->add_option("--fixture", c.fixture, "poly:a0,a1,... | pole:w=... | delta:w=... | zero");
    global->add_option("--ell", ell_text, "Tube offset ell");
    global->add_option("--r", c.r, "Kernel scale r (> ell)");
    common(global);

    auto* local = app.add_subcommand("local-eow", "Local continuation around a carrier box");
    local->add_option("--fixture", c.fixture, "chilbert:w=...;w=... | zero");
    local->add_option("--box", c.box, "a,b,ell");
    local->add_option("--ell", ell_text, "Override the box half height");
    local->add_option("--r", c.r, "Kernel scale r");
    local->add_option("--xi", c.xi, "Comma-separated probe points");
    local->add_option("--t0", c.t0, "First ladder rung");
    local->add_option("--rungs", c.rungs, "Ladder length (default 10)");
    common(local);

    auto* probe = app.add_subcommand("carrier-probe", "Heat-probe decay of a carried functional");
    probe->add_option("--fixture", c.fixture, "delta:w=... | chilbert:... | zero");
    probe->add_option("--carrier", c.carrier, "box1d to use --box instead of the mass points");
    probe->add_option("--box", c.box, "a,b,ell");
    probe->add_option("--xi", c.xi, "Comma-separated probe points");
    probe->add_option("--t0", c.t0, "First ladder rung");
    probe->add_option("--rungs", c.rungs, "Ladder length");
    common(probe);

    try
    {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = join_dash_values(expand_config(args), app);
        std::vector<std::string> storage{argc > 0 ? argv[0] : "eow"};
        storage.insert(storage.end(), args.begin(), args.end());
        std::vector<const char*> ptrs;
        for (const auto& s : storage)
            ptrs.push_back(s.c_str());
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());

        c.subcommand = app.get_subcommands().at(0)->get_name();
        if (!ell_text.empty())
            c.ell = std::stod(ell_text);
        if (!tol_text.empty())
            c.tolerance = std::stod(tol_text);
        if (c.subcommand == "carrier-probe" && app.get_subcommands().at(0)->count("--carrier") == 0)
            c.carrier = "";
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return exit_pass;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return run(c, out, err);
}

}  // namespace eow
