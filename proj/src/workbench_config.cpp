// SPDX-License-Identifier: Apache-2.0
#include "hfce/workbench_config.hpp"

#include "hfce/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace hfce
{

using nlohmann::json;

std::string to_string(DictionaryKind kind)
{
    return kind == DictionaryKind::Polar ? "polar" : "angular";
}

DictionaryKind parse_dictionary_kind(const std::string& text)
{
    if (text == "polar")
        return DictionaryKind::Polar;
    if (text == "angular")
        return DictionaryKind::Angular;
    throw ConfigError("unknown dictionary '" + text + "' (expected polar or angular)");
}

namespace
{

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& origin)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
            {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
}

// Rejects keys outside `allowed` so typos do not silently fall back to defaults.
void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto& item : obj.items())
    {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known)
            throw ConfigError("unknown key '" + where + "." + item.key() + "'");
    }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& where)
{
    if (!obj.contains(key))
        return;
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception&)
    {
        throw ConfigError("'" + where + "." + key + "' has the wrong type");
    }
}

[[noreturn]] void rethrow_with_origin(const ConfigError& e, const std::filesystem::path& path)
{
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0)
        throw e;
    throw ConfigError(path.string() + ": " + what);
}

CoefficientUpdate parse_update(const std::string& s)
{
    if (s == "least_squares")
        return CoefficientUpdate::LeastSquares;
    if (s == "matched_filter")
        return CoefficientUpdate::MatchedFilter;
    throw ConfigError("unknown coefficient_update '" + s + "'");
}

AtomSelection parse_selection(const std::string& s)
{
    if (s == "normalized")
        return AtomSelection::Normalized;
    if (s == "raw")
        return AtomSelection::Raw;
    throw ConfigError("unknown atom_selection '" + s + "'");
}

CombinerMode parse_combiner(const std::string& s)
{
    if (s == "uniform_real")
        return CombinerMode::UniformReal;
    if (s == "unit_modulus")
        return CombinerMode::UnitModulusPhase;
    throw ConfigError("unknown combiner '" + s + "'");
}

} // namespace

WorkbenchConfig parse_workbench_config(const std::string& text, const std::filesystem::path& base_dir,
                                       const std::string& origin)
{
    const json root = parse_json(text, origin);
    check_keys(root, "config", {"system", "scene", "dictionary", "estimator", "profile"});
    WorkbenchConfig cfg;

    if (root.contains("system"))
    {
        const auto& s = root["system"];
        check_keys(s, "system", {"n_antennas", "n_rf_chains", "n_pilot_slots", "n_subcarriers",
                                 "carrier_freq_hz", "bandwidth_hz", "element_spacing_m", "rng_seed"});
        auto& sys = cfg.system;
        read_field(s, "n_antennas", sys.n_antennas, "system");
        read_field(s, "n_rf_chains", sys.n_rf_chains, "system");
        read_field(s, "n_pilot_slots", sys.n_pilot_slots, "system");
        read_field(s, "n_subcarriers", sys.n_subcarriers, "system");
        read_field(s, "carrier_freq_hz", sys.carrier_freq_hz, "system");
        read_field(s, "bandwidth_hz", sys.bandwidth_hz, "system");
        read_field(s, "rng_seed", sys.rng_seed, "system");
        if (s.contains("element_spacing_m") && !s["element_spacing_m"].is_null())
        {
            double d = 0.0;
            read_field(s, "element_spacing_m", d, "system");
            sys.element_spacing_m = d;
        }
    }

    if (root.contains("scene"))
    {
        const auto& s = root["scene"];
        check_keys(s, "scene", {"l_far", "l_near", "los_range_m", "near_range_fraction", "material",
                                "absorption_csv", "absorption_table"});
        auto& sc = cfg.scene;
        read_field(s, "l_far", sc.l_far, "scene");
        read_field(s, "l_near", sc.l_near, "scene");
        read_field(s, "near_range_fraction", sc.near_range_fraction, "scene");
        if (s.contains("los_range_m"))
        {
            std::vector<double> range;
            read_field(s, "los_range_m", range, "scene");
            if (range.size() != 2)
                throw ConfigError("'scene.los_range_m' must be [min, max]");
            sc.los_range_min_m = range[0];
            sc.los_range_max_m = range[1];
        }
        if (s.contains("material"))
        {
            const auto& m = s["material"];
            check_keys(m, "scene.material", {"refractive_index", "roughness_std_m", "incidence_angle_rad"});
            read_field(m, "refractive_index", sc.material.refractive_index, "scene.material");
            read_field(m, "roughness_std_m", sc.material.roughness_std_m, "scene.material");
            read_field(m, "incidence_angle_rad", sc.material.incidence_angle_rad, "scene.material");
        }
        if (s.contains("absorption_csv") && s.contains("absorption_table"))
            throw ConfigError("give either scene.absorption_csv or scene.absorption_table");
        if (s.contains("absorption_csv"))
        {
            std::string rel;
            read_field(s, "absorption_csv", rel, "scene");
            std::filesystem::path p(rel);
            if (p.is_relative() && !base_dir.empty())
                p = base_dir / p;
            sc.absorption = AbsorptionTable::from_csv(p);
        }
        if (s.contains("absorption_table"))
        {
            std::vector<std::array<double, 2>> rows;
            read_field(s, "absorption_table", rows, "scene");
            std::vector<AbsorptionTable::Entry> entries;
            for (const auto& r : rows)
                entries.push_back({r[0], r[1]});
            try
            {
                sc.absorption = AbsorptionTable(std::move(entries));
            }
            catch (const InvalidArgument& e)
            {
                throw ConfigError(std::string("scene.absorption_table: ") + e.what());
            }
        }
    }

    if (root.contains("dictionary"))
    {
        const auto& d = root["dictionary"];
        check_keys(d, "dictionary", {"n_angles", "beta", "min_distance_m", "max_rings_per_angle"});
        read_field(d, "n_angles", cfg.dictionary.n_angles, "dictionary");
        read_field(d, "beta", cfg.dictionary.beta, "dictionary");
        read_field(d, "min_distance_m", cfg.dictionary.min_distance_m, "dictionary");
        read_field(d, "max_rings_per_angle", cfg.dictionary.max_rings_per_angle, "dictionary");
    }

    if (root.contains("estimator"))
    {
        const auto& e = root["estimator"];
        check_keys(e, "estimator", {"sparsity", "coefficient_update", "atom_selection", "combiner"});
        if (e.contains("sparsity"))
        {
            const auto& sp = e["sparsity"];
            if (sp.is_string() && sp.get<std::string>() == "oracle")
                cfg.estimator.fixed_sparsity.reset();
            else if (sp.is_number_integer())
                cfg.estimator.fixed_sparsity = sp.get<int>();
            else
                throw ConfigError("'estimator.sparsity' must be \"oracle\" or an integer");
        }
        std::string text;
        if (e.contains("coefficient_update"))
        {
            read_field(e, "coefficient_update", text, "estimator");
            cfg.estimator.update = parse_update(text);
        }
        if (e.contains("atom_selection"))
        {
            read_field(e, "atom_selection", text, "estimator");
            cfg.estimator.selection = parse_selection(text);
        }
        if (e.contains("combiner"))
        {
            read_field(e, "combiner", text, "estimator");
            cfg.estimator.combiner = parse_combiner(text);
        }
    }

    try
    {
        cfg.system.validate();
        cfg.scene.validate();
        if (cfg.estimator.fixed_sparsity && *cfg.estimator.fixed_sparsity < 1)
            throw InvalidArgument("estimator.sparsity must be positive");
        if (!(cfg.dictionary.beta > 0.0) || !(cfg.dictionary.min_distance_m > 0.0) ||
            cfg.dictionary.max_rings_per_angle < 0 || cfg.dictionary.n_angles < 0)
            throw InvalidArgument("dictionary settings out of range");
    }
    catch (const InvalidArgument& e)
    {
        throw ConfigError(e.what());
    }
    return cfg;
}

WorkbenchConfig load_workbench_config(const std::filesystem::path& path)
{
    try
    {
        return parse_workbench_config(read_text(path), path.parent_path(), path.string());
    }
    catch (const ConfigError& e)
    {
        rethrow_with_origin(e, path);
    }
}

std::vector<GridCell> SweepSpec::cells() const
{
    std::vector<GridCell> out;
    auto add = [&out](GridCell c) {
        if (std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    };
    for (int rf : n_rf_grid)
        add({rf, fixed_n_pilots});
    for (int q : pilot_grid)
        add({fixed_n_rf, q});
    return out;
}

void SweepSpec::validate(const SystemConfig& system) const
{
    if (snr_grid_db.empty() || n_rf_grid.empty() || pilot_grid.empty())
        throw ConfigError("sweep grids must be nonempty");
    if (n_trials < 1)
        throw ConfigError("sweep n_trials must be at least 1");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            throw ConfigError("sweep SNR values must be finite");
    for (const auto& c : cells())
    {
        const std::string tag = "(N_RF=" + std::to_string(c.n_rf) + ", Q=" + std::to_string(c.n_pilots) + ")";
        if (c.n_rf < 1 || c.n_pilots < 1)
            throw ConfigError("sweep cell " + tag + " must be positive");
        if (c.n_rf > system.n_antennas)
            throw ConfigError("sweep cell " + tag + " has more RF chains than antennas");
        if (c.n_rf * c.n_pilots > system.n_antennas)
            throw ConfigError("sweep cell " + tag + " measures more than N = " +
                              std::to_string(system.n_antennas) + " dimensions");
    }
}

SweepSpec parse_sweep_spec(const std::string& text, const std::string& origin)
{
    const json root = parse_json(text, origin);
    check_keys(root, "sweep", {"snr_grid_db", "n_rf_grid", "pilot_grid", "fixed_n_pilots",
                               "fixed_n_rf", "n_trials", "dictionary"});
    SweepSpec sw;
    read_field(root, "snr_grid_db", sw.snr_grid_db, "sweep");
    read_field(root, "n_rf_grid", sw.n_rf_grid, "sweep");
    read_field(root, "pilot_grid", sw.pilot_grid, "sweep");
    read_field(root, "fixed_n_pilots", sw.fixed_n_pilots, "sweep");
    read_field(root, "fixed_n_rf", sw.fixed_n_rf, "sweep");
    read_field(root, "n_trials", sw.n_trials, "sweep");
    if (root.contains("dictionary"))
    {
        std::string d;
        read_field(root, "dictionary", d, "sweep");
        sw.dictionary = parse_dictionary_kind(d);
    }
    return sw;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path)
{
    try
    {
        return parse_sweep_spec(read_text(path), path.string());
    }
    catch (const ConfigError& e)
    {
        rethrow_with_origin(e, path);
    }
}

json to_json(const WorkbenchConfig& c)
{
    json sys = {{"n_antennas", c.system.n_antennas},
                {"n_rf_chains", c.system.n_rf_chains},
                {"n_pilot_slots", c.system.n_pilot_slots},
                {"n_subcarriers", c.system.n_subcarriers},
                {"carrier_freq_hz", c.system.carrier_freq_hz},
                {"bandwidth_hz", c.system.bandwidth_hz},
                {"rng_seed", c.system.rng_seed}};
    sys["element_spacing_m"] = c.system.element_spacing_m ? json(*c.system.element_spacing_m) : json(nullptr);

    json table = json::array();
    for (const auto& e : c.scene.absorption.entries())
        table.push_back({e.frequency_hz, e.k_per_m});
    json scene = {{"l_far", c.scene.l_far},
                  {"l_near", c.scene.l_near},
                  {"los_range_m", {c.scene.los_range_min_m, c.scene.los_range_max_m}},
                  {"near_range_fraction", c.scene.near_range_fraction},
                  {"material",
                   {{"refractive_index", c.scene.material.refractive_index},
                    {"roughness_std_m", c.scene.material.roughness_std_m},
                    {"incidence_angle_rad", c.scene.material.incidence_angle_rad}}},
                  {"absorption_table", table}};
    json dict = {{"n_angles", c.dictionary.n_angles},
                 {"beta", c.dictionary.beta},
                 {"min_distance_m", c.dictionary.min_distance_m},
                 {"max_rings_per_angle", c.dictionary.max_rings_per_angle}};
    json est = {{"coefficient_update",
                 c.estimator.update == CoefficientUpdate::LeastSquares ? "least_squares" : "matched_filter"},
                {"atom_selection", c.estimator.selection == AtomSelection::Normalized ? "normalized" : "raw"},
                {"combiner", c.estimator.combiner == CombinerMode::UniformReal ? "uniform_real" : "unit_modulus"}};
    est["sparsity"] = c.estimator.fixed_sparsity ? json(*c.estimator.fixed_sparsity) : json("oracle");
    return {{"system", sys}, {"scene", scene}, {"dictionary", dict}, {"estimator", est}};
}

json to_json(const SweepSpec& s)
{
    return {{"snr_grid_db", s.snr_grid_db},
            {"n_rf_grid", s.n_rf_grid},
            {"pilot_grid", s.pilot_grid},
            {"fixed_n_pilots", s.fixed_n_pilots},
            {"fixed_n_rf", s.fixed_n_rf},
            {"n_trials", s.n_trials},
            {"dictionary", to_string(s.dictionary)}};
}

} // namespace hfce
