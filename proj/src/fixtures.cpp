#include "eow/fixtures.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace eow
{
namespace
{
std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double parse_real(const std::string& s)
{
    std::string t = trim(s);
    if (t.empty())
        throw InvalidArgument("expected a number, got an empty string");
    std::size_t used = 0;
    double v = 0;
    try
    {
        v = std::stod(t, &used);
    }
    catch (const std::exception&)
    {
        throw InvalidArgument("not a number: '" + t + "'");
    }
    if (used != t.size() || !std::isfinite(v))
        throw InvalidArgument("not a number: '" + t + "'");
    return v;
}

// key=value pairs or bare positional values
struct Params
{
    std::vector<std::string> positional;
    std::map<std::string, std::string> named;
};

Params parse_params(const std::string& body)
{
    Params p;
    if (trim(body).empty())
        return p;
    for (const auto& item : split(body, ','))
    {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            p.positional.push_back(item);
        else
            p.named[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return p;
}

std::vector<PointMass> parse_masses(const std::string& body, const std::string& tag)
{
    std::vector<PointMass> out;
    for (const auto& part : split(body, ';'))
    {
        auto p = parse_params(part);
        if (!p.named.count("w"))
            throw InvalidArgument("fixture '" + tag + "': every mass needs w=<complex>");
        cplx c = p.named.count("c") ? parse_complex(p.named["c"]) : cplx(1.0);
        out.push_back({c, {parse_complex(p.named["w"])}});
    }
    return out;
}
}  // namespace

cplx parse_complex(const std::string& s)
{
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t += ch;
    if (t.empty())
        throw InvalidArgument("empty complex number");
    if (t.back() != 'i')
        return parse_real(t);
    std::string body = t.substr(0, t.size() - 1);
    // split at the last sign that is not part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
        {
            cut = k;
            break;
        }
    auto imag_of = [](const std::string& u) {
        if (u.empty() || u == "+")
            return 1.0;
        if (u == "-")
            return -1.0;
        return parse_real(u);
    };
    if (cut == std::string::npos)
        return {0.0, imag_of(body)};
    return {parse_real(body.substr(0, cut)), imag_of(body.substr(cut))};
}

RealVec Range::values() const
{
    RealVec out;
    if (!(step > 0) || hi < lo)
        throw InvalidArgument("range: need lo <= hi and step > 0");
    auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k)
        out.push_back(lo + k * step);
    return out;
}

Range parse_range(const std::string& s)
{
    auto parts = split(s, ':');
    if (parts.size() != 3)
        throw InvalidArgument("range '" + s + "': expected lo:hi:step");
    Range r{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
    r.values();
    return r;
}

RealVec parse_list(const std::string& s)
{
    RealVec out;
    for (const auto& p : split(s, ','))
        out.push_back(parse_real(p));
    if (out.empty())
        throw InvalidArgument("empty list");
    return out;
}

TestFunction parse_test_function(const std::string& tag)
{
    auto colon = tag.find(':');
    std::string name = trim(tag.substr(0, colon));
    auto p = parse_params(colon == std::string::npos ? "" : tag.substr(colon + 1));
    auto pick = [&](const char* key, std::size_t pos, const std::string& dflt) {
        if (p.named.count(key))
            return p.named[key];
        return pos < p.positional.size() ? p.positional[pos] : dflt;
    };
    TestFunction phi;
    if (name == "gaussian")
        phi = TestFunction::gaussian(parse_complex(pick("c", 0, "0")), parse_real(pick("s", 1, "1")));
    else if (name == "polygauss")
    {
        ComplexVec a;
        for (const auto& v : p.positional)
            a.push_back(parse_complex(v));
        if (a.empty())
            throw InvalidArgument("test function '" + tag + "': no coefficients");
        phi = TestFunction::poly_gaussian(a, parse_complex(p.named.count("c") ? p.named["c"] : "0"),
                                          parse_real(p.named.count("s") ? p.named["s"] : "1"));
    }
    else if (name == "heat")
        phi = TestFunction::heat_probe({parse_real(pick("xi", 0, "0"))}, parse_real(pick("t", 1, "1")));
    else
        throw InvalidArgument("unknown test function tag '" + name + "'");
    phi.label = tag;
    return phi;
}

const char* to_string(FixtureKind k)
{
    switch (k)
    {
    case FixtureKind::polynomial: return "poly";
    case FixtureKind::pole: return "pole";
    case FixtureKind::cauchy_hilbert: return "chilbert";
    case FixtureKind::delta: return "delta";
    case FixtureKind::zero: return "zero";
    }
    return "?";
}

bool Fixture::has_closed_form() const
{
    return kind == FixtureKind::polynomial || kind == FixtureKind::cauchy_hilbert || kind == FixtureKind::zero;
}

cplx Fixture::closed_form(cplx z) const
{
    switch (kind)
    {
    case FixtureKind::polynomial:
    {
        cplx s{};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            s = s * z + *it;
        return s;
    }
    case FixtureKind::cauchy_hilbert: return cauchy_hilbert_value(masses, z);
    case FixtureKind::zero: return 0.0;
    default: throw InvalidArgument(std::string("fixture '") + tag + "' has no closed-form extension");
    }
}

Fixture parse_fixture(const std::string& tag)
{
    Fixture f;
    f.tag = tag;
    auto colon = tag.find(':');
    std::string name = trim(tag.substr(0, colon));
    std::string body = colon == std::string::npos ? "" : tag.substr(colon + 1);
    if (name == "poly")
    {
        f.kind = FixtureKind::polynomial;
        for (const auto& v : split(body, ','))
            f.coeffs.push_back(parse_complex(v));
        if (f.coeffs.empty())
            throw InvalidArgument("fixture '" + tag + "': no coefficients");
    }
    else if (name == "pole")
    {
        f.kind = FixtureKind::pole;
        auto p = parse_params(body);
        std::string w = p.named.count("w") ? p.named["w"] : (p.positional.empty() ? "" : p.positional[0]);
        f.pole = parse_complex(w);
    }
    else if (name == "chilbert")
    {
        f.kind = FixtureKind::cauchy_hilbert;
        f.masses = parse_masses(body, tag);
    }
    else if (name == "delta")
    {
        f.kind = FixtureKind::delta;
        f.masses = parse_masses(body, tag);
    }
    else if (name == "zero")
        f.kind = FixtureKind::zero;
    else
        throw InvalidArgument("unknown fixture tag '" + name + "'");
    return f;
}

}  // namespace eow
