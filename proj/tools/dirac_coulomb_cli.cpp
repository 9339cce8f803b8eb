// Command-line front end: spectra, radial functions and symmetry sweeps.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 valid request
// with an empty spectrum.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirac_coulomb.hpp"

namespace dc = dirac_coulomb;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_empty = 2;

constexpr const char* output_dir_env = "DIRAC_COULOMB_OUTPUT_DIR";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CouplingOptions {
    std::optional<double> alpha_sigma;
    std::optional<double> alpha_delta;
    std::optional<double> alpha_v;
    std::optional<double> alpha_s;

    void attach(CLI::App& app)
    {
        app.add_option("--alpha-sigma", alpha_sigma, "Coulomb strength of V+S");
        app.add_option("--alpha-delta", alpha_delta, "Coulomb strength of V-S");
        app.add_option("--alpha-v", alpha_v, "vector Coulomb strength");
        app.add_option("--alpha-s", alpha_s, "scalar Coulomb strength");
    }

    dc::CoulombCouplings resolve() const
    {
        const bool sd = alpha_sigma || alpha_delta;
        const bool vs = alpha_v || alpha_s;
        if (sd && vs) {
            throw ConfigError("give couplings either as --alpha-sigma/--alpha-delta or as --alpha-v/--alpha-s, not both");
        }
        if (sd) {
            if (!alpha_sigma || !alpha_delta) {
                throw ConfigError("--alpha-sigma and --alpha-delta must be given together");
            }
            return {*alpha_sigma, *alpha_delta};
        }
        if (vs) {
            if (!alpha_v || !alpha_s) {
                throw ConfigError("--alpha-v and --alpha-s must be given together");
            }
            return dc::CoulombCouplings::from_vector_scalar(*alpha_v, *alpha_s);
        }
        throw ConfigError("couplings missing: use --alpha-sigma/--alpha-delta or --alpha-v/--alpha-s");
    }
};

struct Common {
    CouplingOptions couplings;
    double mass_energy = 1.0;
    double compton_length = 1.0;
    std::string format;
    std::string output;
    std::string branch = "plus";

    void attach(CLI::App& app, const std::string& default_format)
    {
        format = default_format;
        couplings.attach(app);
        app.add_option("--mass-energy", mass_energy, "mc^2 in the output energy unit")->capture_default_str();
        app.add_option("--compton-length", compton_length, "hbar/(mc) in the output length unit")
            ->capture_default_str();
        app.add_option("--format", format, "output format")->capture_default_str();
        app.add_option("--output,-o", output, "output file (default: standard output)");
        app.add_option("--branch", branch, "energy branch: plus or minus")->capture_default_str();
    }

    dc::UnitSystem units() const
    {
        dc::UnitSystem u{mass_energy, compton_length};
        try {
            u.validate();
        } catch (const dc::Error& e) {
            throw ConfigError(e.what());
        }
        return u;
    }

    dc::Branch parsed_branch() const
    {
        const auto b = dc::parse_branch(branch);
        if (!b) {
            throw ConfigError("unknown branch '" + branch + "' (expected plus or minus)");
        }
        return *b;
    }

    void require_format(std::initializer_list<const char*> allowed) const
    {
        for (const char* f : allowed) {
            if (format == f) {
                return;
            }
        }
        std::string list;
        for (const char* f : allowed) {
            list += (list.empty() ? "" : ", ") + std::string(f);
        }
        throw ConfigError("unsupported --format '" + format + "' here (expected " + list + ")");
    }
};

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw ConfigError("failed writing '" + path + "'");
    }
}

dc::QuantumNumbers parse_state_arg(const std::string& text)
{
    try {
        return dc::parse_state(text);
    } catch (const dc::Error& e) {
        throw ConfigError(e.what());
    }
}

std::string file_stem(const dc::QuantumNumbers& qn, dc::Branch branch)
{
    std::string label = dc::spectroscopic_label(qn);
    for (char& ch : label) {
        if (ch == '/') {
            ch = '_';
        }
    }
    return label + "_" + std::string(dc::to_string(branch));
}

std::string resolve_output_dir(const std::string& flag)
{
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv(output_dir_env); env != nullptr && *env != '\0') {
        return env;
    }
    return {};
}

// spectrum ------------------------------------------------------------------

struct SpectrumCmd {
    Common common;
    int n_max = 3;
};

int run_spectrum(const SpectrumCmd& cmd)
{
    cmd.common.require_format({"csv", "json"});
    const auto couplings = cmd.common.couplings.resolve();
    const auto units = cmd.common.units();
    const auto branch = cmd.common.parsed_branch();
    if (cmd.n_max < 1) {
        throw ConfigError("--n-max must be at least 1");
    }
    dc::SpectrumTable table;
    try {
        table = dc::spectrum_table(couplings, cmd.n_max, branch);
    } catch (const dc::Error& e) {
        if (e.code() == dc::ErrorCode::empty_spectrum) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_empty;
        }
        throw;
    }
    std::ostringstream out;
    if (cmd.common.format == "csv") {
        dc::io::write_spectrum_csv(out, table, units);
    } else {
        out << dc::io::spectrum_to_json(table, units).dump(2) << '\n';
    }
    emit(out.str(), cmd.common.output);
    return exit_ok;
}

// show: re-read a spectrum JSON document --------------------------------------

struct ShowCmd {
    std::string input;
    std::string format = "csv";
    std::string output;
};

int run_show(const ShowCmd& cmd)
{
    if (cmd.format != "csv" && cmd.format != "json") {
        throw ConfigError("unsupported --format '" + cmd.format + "' here (expected csv, json)");
    }
    std::ifstream in(cmd.input, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + cmd.input + "'");
    }
    dc::io::SpectrumDocument doc;
    try {
        doc = dc::io::spectrum_from_json(dc::io::json::parse(in));
    } catch (const dc::io::json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    std::ostringstream out;
    if (cmd.format == "csv") {
        dc::io::write_spectrum_csv(out, doc.table, doc.units);
    } else {
        out << dc::io::spectrum_to_json(doc.table, doc.units).dump(2) << '\n';
    }
    emit(out.str(), cmd.output);
    return exit_ok;
}

// wavefunction --------------------------------------------------------------

struct WavefunctionCmd {
    Common common;
    std::vector<std::string> states;
    std::string grid = "geometric";
    std::optional<std::size_t> points;
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::string output_dir;
};

int run_wavefunction(const WavefunctionCmd& cmd)
{
    cmd.common.require_format({"plotdata"});
    const auto couplings = cmd.common.couplings.resolve();
    const auto units = cmd.common.units();
    const auto branch = cmd.common.parsed_branch();
    if (cmd.states.empty()) {
        throw ConfigError("at least one --state is required");
    }
    if (cmd.grid != "geometric" && cmd.grid != "uniform") {
        throw ConfigError("unknown --grid '" + cmd.grid + "' (expected geometric or uniform)");
    }
    if (!cmd.common.output.empty() && cmd.states.size() > 1) {
        throw ConfigError("--output takes a single state; use --output-dir for several");
    }

    std::vector<dc::QuantumNumbers> states;
    for (const auto& s : cmd.states) {
        states.push_back(parse_state_arg(s));
    }

    std::vector<std::pair<dc::QuantumNumbers, std::string>> blocks;
    for (const auto& qn : states) {
        const dc::Verdict verdict = dc::validate_bound_state(couplings, qn, branch);
        if (!verdict) {
            throw ConfigError("state " + dc::spectroscopic_label(qn) + " (n_r=" + std::to_string(qn.n_r) +
                              ", kappa=" + std::to_string(qn.kappa.value()) + ") rejected: " +
                              std::string(dc::to_string(verdict.reason)) +
                              (verdict.detail.empty() ? "" : " (" + verdict.detail + ")"));
        }
        const dc::BoundLevel level = dc::energy(couplings, qn, branch);
        // Grid options are in the caller's length unit.
        const double lc = units.compton_length;
        const double lo = cmd.r_min ? *cmd.r_min / lc : 1e-4;
        const double hi = cmd.r_max ? *cmd.r_max / lc : 40.0 / level.lambda;
        const std::size_t count = cmd.points.value_or(2048);
        dc::RadialGrid grid;
        try {
            grid = cmd.grid == "uniform" ? dc::RadialGrid::uniform(lo, hi, count)
                                         : dc::RadialGrid::geometric(lo, hi, count);
        } catch (const dc::Error& e) {
            throw ConfigError(e.what());
        }
        std::ostringstream out;
        try {
            dc::io::write_plotdata(out, dc::wavefunctions(couplings, qn, branch, grid), units);
        } catch (const dc::Error& e) {
            throw ConfigError(e.what());
        }
        blocks.emplace_back(qn, out.str());
    }

    const std::string dir = resolve_output_dir(cmd.output_dir);
    if (!cmd.common.output.empty()) {
        emit(blocks.front().second, cmd.common.output);
    } else if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
        }
        for (const auto& [qn, text] : blocks) {
            const fs::path path = fs::path(dir) / (file_stem(qn, branch) + ".dat");
            emit(text, path.string());
            std::cerr << "wrote " << path.string() << '\n';
        }
    } else {
        std::string all;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            all += (i == 0 ? "" : "\n\n") + blocks[i].second;   // blank lines separate data sets
        }
        emit(all, "");
    }
    return exit_ok;
}

// symmetry ------------------------------------------------------------------

struct SymmetryCmd {
    Common common;
    std::string kind = "spin";
    double from = 0.0;
    double to = 0.0;
    int steps = 11;
    std::vector<std::string> states;
    std::vector<std::string> doublets;
    bool probe = false;
    double probe_step = 1e-4;
};

int run_symmetry(const SymmetryCmd& cmd)
{
    cmd.common.require_format({"json", "csv"});
    const auto units = cmd.common.units();
    const auto branch = cmd.common.parsed_branch();
    const auto kind = dc::parse_symmetry_kind(cmd.kind);
    if (!kind) {
        throw ConfigError("unknown --kind '" + cmd.kind + "' (expected spin or pseudospin)");
    }
    const auto& co = cmd.common.couplings;
    if (co.alpha_v || co.alpha_s) {
        throw ConfigError("symmetry sweeps take the fixed coupling as --alpha-sigma (spin) or --alpha-delta (pseudospin)");
    }
    const bool spin = *kind == dc::SymmetryKind::spin;
    const auto& fixed = spin ? co.alpha_sigma : co.alpha_delta;
    const auto& swept = spin ? co.alpha_delta : co.alpha_sigma;
    if (!fixed) {
        throw ConfigError(spin ? "spin sweeps need --alpha-sigma" : "pseudospin sweeps need --alpha-delta");
    }
    if (swept) {
        throw ConfigError(std::string("the swept coupling is set by --from/--to, drop ") +
                          (spin ? "--alpha-delta" : "--alpha-sigma"));
    }

    dc::SymmetryScanConfig config;
    config.kind = *kind;
    config.branch = branch;
    config.fixed_coupling = *fixed;
    config.from = cmd.from;
    config.to = cmd.to;
    config.steps = cmd.steps;
    config.probe = cmd.probe;
    config.probe_step = cmd.probe_step;
    for (const auto& s : cmd.states) {
        config.states.push_back(parse_state_arg(s));
    }
    for (const auto& d : cmd.doublets) {
        const auto colon = d.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("--doublet expects FIRST:SECOND, got '" + d + "'");
        }
        try {
            config.doublets.push_back(dc::DoubletSpec::from_pair(*kind, parse_state_arg(d.substr(0, colon)),
                                                                 parse_state_arg(d.substr(colon + 1))));
        } catch (const dc::Error& e) {
            throw ConfigError(e.what());
        }
    }
    dc::SymmetryScan scan;
    try {
        scan = dc::symmetry_scan(config);
    } catch (const dc::Error& e) {
        throw ConfigError(e.what());
    }
    std::ostringstream out;
    if (cmd.common.format == "json") {
        out << dc::io::symmetry_scan_to_json(scan, units).dump(2) << '\n';
    } else {
        dc::io::write_symmetry_csv(out, scan);
    }
    emit(out.str(), cmd.common.output);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bound states of the Dirac equation with scalar and vector Coulomb potentials"};
    app.require_subcommand(1);

    SpectrumCmd spectrum;
    auto* sp = app.add_subcommand("spectrum", "energy table up to a principal quantum number");
    spectrum.common.attach(*sp, "csv");
    sp->add_option("--n-max", spectrum.n_max, "largest n = n_r + |kappa|")->capture_default_str();

    WavefunctionCmd wave;
    auto* wp = app.add_subcommand("wavefunction", "normalized radial functions as plot data");
    wave.common.attach(*wp, "plotdata");
    wp->add_option("--state", wave.states, "state as '2p1/2', 'n_r,kappa' or '(n_r,kappa)'; repeatable");
    wp->add_option("--grid", wave.grid, "geometric or uniform")->capture_default_str();
    wp->add_option("--points", wave.points, "grid points (default 2048)");
    wp->add_option("--r-min", wave.r_min, "first grid radius (default 1e-4 L_C)");
    wp->add_option("--r-max", wave.r_max, "last grid radius (default 40/lambda L_C)");
    wp->add_option("--output-dir", wave.output_dir,
                   std::string("directory for one file per state (default: $") + output_dir_env + ")");

    SymmetryCmd sym;
    auto* yp = app.add_subcommand("symmetry", "sweep toward a spin or pseudospin symmetry limit");
    sym.common.attach(*yp, "json");
    yp->add_option("--kind", sym.kind, "spin (sweeps alpha_delta) or pseudospin (sweeps alpha_sigma)")
        ->capture_default_str();
    yp->add_option("--from", sym.from, "first value of the swept coupling")->required();
    yp->add_option("--to", sym.to, "last value of the swept coupling")->required();
    yp->add_option("--steps", sym.steps, "sweep points including both ends")->capture_default_str();
    yp->add_option("--state", sym.states, "state to tabulate; repeatable");
    yp->add_option("--doublet", sym.doublets, "partner pair FIRST:SECOND, e.g. 2p1/2:2p3/2; repeatable");
    yp->add_flag("--probe", sym.probe, "finite-difference slope check at the symmetry point");
    yp->add_option("--probe-step", sym.probe_step, "probe step in the swept coupling")->capture_default_str();

    ShowCmd show;
    auto* hp = app.add_subcommand("show", "re-read a spectrum JSON document");
    hp->add_option("input", show.input, "spectrum JSON file")->required();
    hp->add_option("--format", show.format, "csv or json")->capture_default_str();
    hp->add_option("--output,-o", show.output, "output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (sp->parsed()) {
            return run_spectrum(spectrum);
        }
        if (wp->parsed()) {
            return run_wavefunction(wave);
        }
        if (yp->parsed()) {
            return run_symmetry(sym);
        }
        return run_show(show);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const dc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
}
