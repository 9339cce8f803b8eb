#pragma once

// Flat-file formats: spectrum CSV/JSON (with a reader for the JSON),
// plotdata for radial functions and symmetry sweep reports.
// Layouts are described in docs/formats.md.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "model.hpp"
#include "radial.hpp"
#include "spectrum.hpp"
#include "symmetry.hpp"

namespace dirac_coulomb::io {

using json = nlohmann::ordered_json;

inline constexpr const char* spectrum_schema = "dirac-coulomb/spectrum";
inline constexpr const char* symmetry_schema = "dirac-coulomb/symmetry-scan";
inline constexpr int schema_version = 1;

/// %.17g: enough digits to read back the identical double.
inline std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_spectrum_csv(std::ostream& out, const SpectrumTable& table, const UnitSystem& units)
{
    out << "label,n_r,kappa,n,branch,E[mc2],E[units],group\n";
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
        const auto& level = table.levels[i];
        const auto& qn = level.quantum_numbers;
        out << level.label() << ',' << qn.n_r << ',' << qn.kappa.value() << ',' << qn.n() << ','
            << to_string(level.branch) << ',' << format_real(level.energy) << ','
            << format_real(level.energy * units.mass_energy) << ',' << table.group_of[i] << '\n';
    }
}

inline json spectrum_to_json(const SpectrumTable& table, const UnitSystem& units)
{
    json doc;
    doc["schema"] = spectrum_schema;
    doc["version"] = schema_version;
    doc["units"] = {{"mass_energy", units.mass_energy}, {"compton_length", units.compton_length}};
    doc["couplings"] = {{"alpha_sigma", table.couplings.alpha_sigma}, {"alpha_delta", table.couplings.alpha_delta}};
    doc["branch"] = to_string(table.branch);
    doc["n_max"] = table.n_max;
    json levels = json::array();
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
        const auto& level = table.levels[i];
        const auto& qn = level.quantum_numbers;
        levels.push_back({{"label", level.label()},
                          {"n_r", qn.n_r},
                          {"kappa", qn.kappa.value()},
                          {"n", qn.n()},
                          {"branch", to_string(level.branch)},
                          {"energy", level.energy},
                          {"energy_units", level.energy * units.mass_energy},
                          {"lambda", level.lambda},
                          {"gamma", level.gamma},
                          {"xi", level.xi},
                          {"eta1", level.eta1},
                          {"eta2", level.eta2},
                          {"quantization_residual", level.quantization_residual},
                          {"group", table.group_of[i]}});
    }
    doc["levels"] = std::move(levels);
    json groups = json::array();
    for (const auto& g : table.groups) {
        groups.push_back({{"id", g.id}, {"energy", g.energy}, {"label", g.label}, {"members", g.members}});
    }
    doc["groups"] = std::move(groups);
    return doc;
}

struct SpectrumDocument {
    SpectrumTable table;
    UnitSystem units;
};

inline Branch branch_field(const json& j)
{
    const auto b = parse_branch(j.get<std::string>());
    if (!b) {
        throw Error(ErrorCode::invalid_argument, "unknown branch '" + j.get<std::string>() + "'");
    }
    return *b;
}

/// Inverse of spectrum_to_json.
inline SpectrumDocument spectrum_from_json(const json& doc)
{
    try {
        if (doc.at("schema").get<std::string>() != spectrum_schema) {
            throw Error(ErrorCode::invalid_argument, "not a spectrum document");
        }
        if (doc.at("version").get<int>() != schema_version) {
            throw Error(ErrorCode::invalid_argument,
                        "unsupported spectrum schema version " + std::to_string(doc.at("version").get<int>()));
        }
        SpectrumDocument out;
        out.units.mass_energy = doc.at("units").at("mass_energy").get<double>();
        out.units.compton_length = doc.at("units").at("compton_length").get<double>();
        out.units.validate();
        auto& table = out.table;
        table.couplings.alpha_sigma = doc.at("couplings").at("alpha_sigma").get<double>();
        table.couplings.alpha_delta = doc.at("couplings").at("alpha_delta").get<double>();
        table.branch = branch_field(doc.at("branch"));
        table.n_max = doc.at("n_max").get<int>();
        for (const auto& l : doc.at("levels")) {
            BoundLevel level;
            level.quantum_numbers = QuantumNumbers(l.at("n_r").get<int>(), l.at("kappa").get<int>());
            level.branch = branch_field(l.at("branch"));
            level.energy = l.at("energy").get<double>();
            level.lambda = l.at("lambda").get<double>();
            level.gamma = l.at("gamma").get<double>();
            level.xi = l.at("xi").get<double>();
            level.eta1 = l.at("eta1").get<double>();
            level.eta2 = l.at("eta2").get<double>();
            level.quantization_residual = l.at("quantization_residual").get<double>();
            if (level.label() != l.at("label").get<std::string>()) {
                throw Error(ErrorCode::invalid_label, "label '" + l.at("label").get<std::string>() +
                                                          "' does not match (n_r, kappa)");
            }
            table.levels.push_back(level);
            table.group_of.push_back(l.at("group").get<int>());
        }
        for (const auto& g : doc.at("groups")) {
            DegeneracyGroup group;
            group.id = g.at("id").get<int>();
            group.energy = g.at("energy").get<double>();
            group.label = g.at("label").get<std::string>();
            group.members = g.at("members").get<std::vector<std::size_t>>();
            for (std::size_t m : group.members) {
                if (m >= table.levels.size()) {
                    throw Error(ErrorCode::invalid_argument, "group member index out of range");
                }
            }
            table.groups.push_back(std::move(group));
        }
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("malformed spectrum document: ") + e.what());
    }
}

/// Whitespace-separated r, g/r, f/r with r in compton_length units and the
/// functions scaled to unit norm in those units (factor compton_length^-1/2
/// for g and f, and a further compton_length^-1 for the division by r).
inline void write_plotdata(std::ostream& out, const RadialSolution& s, const UnitSystem& units)
{
    const auto& level = s.level;
    const auto& qn = level.quantum_numbers;
    out << "# state " << level.label() << " n_r=" << qn.n_r << " kappa=" << qn.kappa.value()
        << " branch=" << to_string(level.branch) << '\n';
    out << "# alpha_sigma=" << format_real(s.couplings.alpha_sigma)
        << " alpha_delta=" << format_real(s.couplings.alpha_delta) << '\n';
    out << "# E[mc2]=" << format_real(level.energy) << " E[units]=" << format_real(level.energy * units.mass_energy)
        << '\n';
    out << "# nodes n_g=" << s.node_count_g << " n_f=" << s.node_count_f << " (origin counted as one node)\n";
    out << "# mass_energy=" << format_real(units.mass_energy) << " compton_length=" << format_real(units.compton_length)
        << '\n';
    out << "# r g/r f/r   (r in L_C times compton_length)\n";
    const double amp = 1.0 / std::sqrt(units.compton_length);
    for (std::size_t i = 0; i < s.grid.points.size(); ++i) {
        const double r = s.grid.points[i] * units.compton_length;
        out << format_real(r) << ' ' << format_real(amp * s.g_samples[i] / r) << ' '
            << format_real(amp * s.f_samples[i] / r) << '\n';
    }
}

inline json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

inline json symmetry_scan_to_json(const SymmetryScan& scan, const UnitSystem& units)
{
    const auto& cfg = scan.config;
    const bool spin = cfg.kind == SymmetryKind::spin;
    json doc;
    doc["schema"] = symmetry_schema;
    doc["version"] = schema_version;
    doc["units"] = {{"mass_energy", units.mass_energy}, {"compton_length", units.compton_length}};
    doc["kind"] = to_string(cfg.kind);
    doc["branch"] = to_string(cfg.branch);
    doc["swept"] = spin ? "alpha_delta" : "alpha_sigma";
    doc["fixed"] = {{"name", spin ? "alpha_sigma" : "alpha_delta"}, {"value", cfg.fixed_coupling}};
    json states = json::array();
    for (const auto& qn : cfg.states) {
        states.push_back({{"label", spectroscopic_label(qn)}, {"n_r", qn.n_r}, {"kappa", qn.kappa.value()}});
    }
    doc["states"] = std::move(states);
    json doublets = json::array();
    for (const auto& d : cfg.doublets) {
        doublets.push_back({{"first", spectroscopic_label(d.first)}, {"second", spectroscopic_label(d.second)}});
    }
    doc["doublets"] = std::move(doublets);

    json points = json::array();
    for (const auto& p : scan.points) {
        json jp;
        jp["parameter"] = p.parameter;
        jp["alpha_sigma"] = p.couplings.alpha_sigma;
        jp["alpha_delta"] = p.couplings.alpha_delta;
        json js = json::array();
        for (const auto& st : p.states) {
            js.push_back({{"label", spectroscopic_label(st.quantum_numbers)},
                          {"exact", optional_number(st.exact)},
                          {"truncated", st.truncated},
                          {"realizable", st.realizable},
                          {"rejection", st.rejection}});
        }
        jp["states"] = std::move(js);
        json jd = json::array();
        for (const auto& d : p.doublets) {
            jd.push_back({{"splitting", optional_number(d.splitting)}, {"rejection", d.rejection}});
        }
        jp["doublets"] = std::move(jd);
        points.push_back(std::move(jp));
    }
    doc["points"] = std::move(points);

    json probes = json::array();
    for (const auto& pr : scan.probes) {
        json jp = {{"label", spectroscopic_label(pr.quantum_numbers)}};
        if (pr.report) {
            const auto& r = *pr.report;
            jp["realizable"] = r.realizable;
            jp["numeric_slope"] = r.realizable ? json(r.numeric_slope) : json(nullptr);
            jp["analytic_slope"] = r.realizable ? json(r.analytic_slope) : json(nullptr);
            jp["mismatch"] = r.realizable ? json(r.mismatch) : json(nullptr);
            jp["note"] = r.note;
        } else {
            jp["error"] = pr.error;
        }
        probes.push_back(std::move(jp));
    }
    doc["probes"] = std::move(probes);
    return doc;
}

inline std::string csv_optional(const std::optional<double>& v)
{
    return v ? format_real(*v) : std::string();
}

/// One row per sweep point and state; doublet splittings repeat on each row
/// of their point. Probes are appended as a '#' comment block.
inline void write_symmetry_csv(std::ostream& out, const SymmetryScan& scan)
{
    const auto& cfg = scan.config;
    out << "# sweep " << (cfg.kind == SymmetryKind::spin ? "alpha_delta" : "alpha_sigma") << " from "
        << format_real(cfg.from) << " to " << format_real(cfg.to) << " in " << cfg.steps << " steps, branch "
        << to_string(cfg.branch) << '\n';
    out << "alpha_sigma,alpha_delta,label,E_exact[mc2],E_series[mc2],realizable,rejection";
    for (const auto& d : cfg.doublets) {
        out << ",split:" << spectroscopic_label(d.first) << '-' << spectroscopic_label(d.second) << "[mc2]";
    }
    out << '\n';
    for (const auto& p : scan.points) {
        auto splits = [&] {
            std::string s;
            for (const auto& d : p.doublets) {
                s += ',' + csv_optional(d.splitting);
            }
            return s;
        }();
        if (p.states.empty()) {
            out << format_real(p.couplings.alpha_sigma) << ',' << format_real(p.couplings.alpha_delta) << ",,,,,"
                << splits << '\n';
        }
        for (const auto& st : p.states) {
            out << format_real(p.couplings.alpha_sigma) << ',' << format_real(p.couplings.alpha_delta) << ','
                << spectroscopic_label(st.quantum_numbers) << ','
                << csv_optional(st.exact) << ',' << format_real(st.truncated) << ','
                << (st.realizable ? "yes" : "no") << ',' << st.rejection << splits << '\n';
        }
    }
    for (const auto& pr : scan.probes) {
        out << "# probe " << spectroscopic_label(pr.quantum_numbers) << ": ";
        if (!pr.report) {
            out << "error " << pr.error << '\n';
        } else if (!pr.report->realizable) {
            out << "not realizable; " << pr.report->note << '\n';
        } else {
            out << "numeric_slope=" << format_real(pr.report->numeric_slope)
                << " analytic_slope=" << format_real(pr.report->analytic_slope)
                << " mismatch=" << format_real(pr.report->mismatch) << '\n';
        }
    }
}

} // namespace dirac_coulomb::io
