// SPDX-License-Identifier: Apache-2.0
#include "hfce/evaluation.hpp"

#include "hfce/errors.hpp"
#include "hfce/omp.hpp"
#include "hfce/pipeline.hpp"
#include "hfce/workbench_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace hfce
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

// Exact reconstructions give NMSE 0; clamp so dB averages stay finite.
constexpr double kNmseFloorDb = -300.0;

double floored_nmse_db(const Eigen::MatrixXcd& truth, const Eigen::MatrixXcd& estimate)
{
    const double v = nmse(truth, estimate);
    return v > 0.0 ? std::max(kNmseFloorDb, 10.0 * std::log10(v)) : kNmseFloorDb;
}

Eigen::MatrixXcd load_dictionary(const Manifest& manifest)
{
    if (manifest.dictionary.contains("path"))
        return to_matrix(read_tensor(manifest.resolve(manifest.dictionary["path"].get<std::string>())));
    if (!manifest.config.contains("workbench"))
        throw ValidationError("manifest carries neither a dictionary file nor a config snapshot");
    const auto cfg = parse_workbench_config(manifest.config["workbench"].dump());
    const auto kind = parse_dictionary_kind(manifest.dictionary.value("kind", "polar"));
    return build_dictionary(cfg, kind).matrix();
}

int method_rank(const std::string& method) { return method == kMethodOmp ? 0 : 1; }

using GroupKey = std::tuple<int, std::string, int, int, double>; // method, dict, n_rf, q, snr

} // namespace

std::pair<double, double> mean_and_stderr(const std::vector<double>& values)
{
    if (values.empty())
        return {0.0, 0.0};
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

EvalResult evaluate_manifest(const Manifest& manifest, const std::optional<fs::path>& denoised_dir)
{
    const Eigen::MatrixXcd dictionary = load_dictionary(manifest);
    const std::string dict_kind = manifest.dictionary.value("kind", "polar");

    std::map<GroupKey, std::vector<double>> groups;
    EvalResult result;
    auto score = [&](const ManifestRecord& rec, const std::string& method, const Eigen::MatrixXcd& polar,
                     const Eigen::MatrixXcd& channel) {
        if (polar.rows() != dictionary.cols() || polar.cols() != channel.cols())
            throw ValidationError("polar tensor is " + std::to_string(polar.rows()) + "x" +
                                  std::to_string(polar.cols()) + ", expected " +
                                  std::to_string(dictionary.cols()) + "x" + std::to_string(channel.cols()));
        const double db = floored_nmse_db(channel, dictionary * polar);
        groups[{method_rank(method), dict_kind, rec.n_rf, rec.n_pilot_slots, rec.snr_db}].push_back(db);
    };

    for (const auto& rec : manifest.records)
    {
        if (rec.channel_path.empty())
        {
            result.errors.push_back({rec.id, "record has no antenna-domain channel tensor"});
            continue;
        }
        Eigen::MatrixXcd channel;
        try
        {
            channel = to_matrix(read_tensor(manifest.resolve(rec.channel_path)));
            score(rec, kMethodOmp, to_matrix(read_tensor(manifest.resolve(rec.noisy_path))), channel);
        }
        catch (const std::exception& e)
        {
            result.errors.push_back({rec.id, e.what()});
            continue;
        }
        if (!denoised_dir)
            continue;
        const auto path = *denoised_dir / (rec.id + ".hfct");
        if (!fs::exists(path))
        {
            result.errors.push_back({rec.id, "missing denoised tensor " + path.string()});
            continue;
        }
        try
        {
            score(rec, kMethodDenoised, to_matrix(read_tensor(path)), channel);
        }
        catch (const std::exception& e)
        {
            result.errors.push_back({rec.id, e.what()});
        }
    }

    for (const auto& [key, values] : groups)
    {
        const auto [mean, se] = mean_and_stderr(values);
        EvalRow row;
        row.method = std::get<0>(key) == 0 ? kMethodOmp : kMethodDenoised;
        row.dictionary = std::get<1>(key);
        row.n_rf = std::get<2>(key);
        row.n_pilots = std::get<3>(key);
        row.snr_db = std::get<4>(key);
        row.nmse_db_mean = mean;
        row.nmse_db_stderr = se;
        row.n_samples = static_cast<int>(values.size());
        result.rows.push_back(row);
    }
    return result;
}

void write_csv(std::ostream& out, const std::vector<EvalRow>& rows)
{
    out << kCsvHeader << '\n';
    char buf[256];
    for (const auto& r : rows)
    {
        std::snprintf(buf, sizeof buf, "%g,%d,%d,%s,%s,%.6f,%.6f\n", r.snr_db, r.n_rf, r.n_pilots,
                      r.dictionary.c_str(), r.method.c_str(), r.nmse_db_mean, r.nmse_db_stderr);
        out << buf;
    }
}

std::vector<EvalRow> parse_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw ValidationError("CSV header mismatch: expected '" + std::string(kCsvHeader) + "'");

    std::vector<EvalRow> rows;
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 7)
            throw ValidationError("CSV line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                  std::to_string(f.size()));
        EvalRow r;
        try
        {
            std::size_t used = 0;
            auto whole = [&](const std::string& s) {
                if (used != s.size())
                    throw std::invalid_argument(s);
            };
            r.snr_db = std::stod(f[0], &used), whole(f[0]);
            r.n_rf = std::stoi(f[1], &used), whole(f[1]);
            r.n_pilots = std::stoi(f[2], &used), whole(f[2]);
            r.dictionary = f[3];
            r.method = f[4];
            r.nmse_db_mean = std::stod(f[5], &used), whole(f[5]);
            r.nmse_db_stderr = std::stod(f[6], &used), whole(f[6]);
        }
        catch (const std::exception&)
        {
            throw ValidationError("CSV line " + std::to_string(line_no) + ": malformed number");
        }
        if (r.dictionary.empty() || r.method.empty())
            throw ValidationError("CSV line " + std::to_string(line_no) + ": empty tag");
        rows.push_back(std::move(r));
    }
    if (rows.empty())
        throw ValidationError("CSV has no data rows");
    return rows;
}

std::vector<SeriesFile> write_report(const std::vector<EvalRow>& rows, const fs::path& out_dir)
{
    if (rows.empty())
        throw ValidationError("nothing to report");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    using SeriesKey = std::tuple<std::string, std::string, int, int>; // dict, method, n_rf, q
    std::map<SeriesKey, std::vector<const EvalRow*>> series;
    for (const auto& r : rows)
        series[{r.dictionary, r.method, r.n_rf, r.n_pilots}].push_back(&r);

    std::vector<SeriesFile> files;
    json index_series = json::array();
    for (auto& [key, points] : series)
    {
        std::sort(points.begin(), points.end(),
                  [](const EvalRow* a, const EvalRow* b) { return a->snr_db < b->snr_db; });
        const auto& [dict, method, n_rf, q] = key;
        std::string slug = method;
        for (auto& c : slug)
            if (c == '+')
                c = '_';
        SeriesFile sf;
        sf.path = out_dir / (dict + "_" + slug + "_nrf" + std::to_string(n_rf) + "_q" + std::to_string(q) + ".dat");
        sf.method = method;
        sf.dictionary = dict;
        sf.n_rf = n_rf;
        sf.n_pilots = q;
        sf.n_points = points.size();

        std::ofstream out(sf.path);
        if (!out)
            throw IoError("cannot write " + sf.path.string());
        out << "# dictionary=" << dict << " method=" << method << " n_rf=" << n_rf << " n_pilots=" << q << '\n';
        out << "# snr_db nmse_db_mean nmse_db_stderr\n";
        char buf[128];
        for (const auto* p : points)
        {
            std::snprintf(buf, sizeof buf, "%g %.6f %.6f\n", p->snr_db, p->nmse_db_mean, p->nmse_db_stderr);
            out << buf;
        }
        if (!out)
            throw IoError("failed writing " + sf.path.string());
        index_series.push_back({{"file", sf.path.filename().string()},
                                {"dictionary", dict},
                                {"method", method},
                                {"n_rf", n_rf},
                                {"n_pilots", q}});
        files.push_back(sf);
    }

    // Figure groupings: N_RF sweeps at fixed Q and Q sweeps at fixed N_RF.
    json figures = json::array();
    auto add_figures = [&](const char* sweep, const char* fixed_name, auto fixed_of, auto swept_of) {
        std::map<std::pair<std::string, int>, std::set<int>> swept;
        for (const auto& f : files)
            swept[{f.dictionary, fixed_of(f)}].insert(swept_of(f));
        for (const auto& [k, values] : swept)
        {
            if (values.size() < 2)
                continue;
            json members = json::array();
            for (const auto& f : files)
                if (f.dictionary == k.first && fixed_of(f) == k.second)
                    members.push_back(f.path.filename().string());
            figures.push_back({{"sweep", sweep},
                               {"dictionary", k.first},
                               {fixed_name, k.second},
                               {"series", members}});
        }
    };
    add_figures("n_rf", "n_pilots", [](const SeriesFile& f) { return f.n_pilots; },
                [](const SeriesFile& f) { return f.n_rf; });
    add_figures("n_pilots", "n_rf", [](const SeriesFile& f) { return f.n_rf; },
                [](const SeriesFile& f) { return f.n_pilots; });

    std::ofstream idx(out_dir / "index.json");
    if (!idx)
        throw IoError("cannot write " + (out_dir / "index.json").string());
    idx << json{{"series", index_series}, {"figures", figures}}.dump(2) << '\n';
    return files;
}

} // namespace hfce
