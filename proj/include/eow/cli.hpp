#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eow
{
inline constexpr int report_schema_version = 1;

//! Exit codes: 0 all PASS, 1 any FAIL, 2 usage error.
enum ExitCode : int
{
    exit_pass = 0,
    exit_fail = 1,
    exit_usage = 2
};

struct RunConfig
{
    std::string subcommand;  //!< kernel | geometry | reproduce | global-eow | local-eow | carrier-probe

    // fixtures
    std::string fixture;
    std::string phi = "gaussian:0,1";
    std::string carrier = "lightcone4d";
    std::string box = "-0.1,0.1,0.5";

    // parameters; empty strings select the subcommand default
    int n = 1;
    std::optional<double> ell;
    std::string r;  //!< number or "auto"
    double R = 0.5;
    double t = 0;
    std::string grid = "-5:5:0.5,-0.9:0.9:0.3";
    std::string scan = "0:6:0.1";
    std::string xi;
    std::string strategy = "fourier";
    bool matrix = false;

    // quadrature and ladder overrides (0 = default)
    double cutoff = 0;
    double step = 0;
    double t0 = 0;
    int rungs = 0;
    std::size_t samples = 100000;

    std::optional<double> tolerance;
    std::uint64_t seed = 1;

    std::string json_path;  //!< machine report; "-" for stdout
    std::string csv_path;   //!< grid output; "-" for stdout

    //! Throws InvalidArgument on inconsistent settings.
    void validate() const;
};

/*!
 * Execute one subcommand. Summary lines go to `out` (to `err` when a CSV or
 * JSON stream claims stdout). Returns an ExitCode.
 */
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

//! Parse argv (with optional --config JSON) and run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eow
