// SPDX-License-Identifier: Apache-2.0
#include "hfce/dataset.hpp"

#include "hfce/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

namespace hfce
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

void check_id(const std::string& id)
{
    if (id.empty())
        throw ValidationError("sample id must not be empty");
    const bool safe = std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '+';
    });
    if (!safe || id.front() == '.')
        throw ValidationError("sample id '" + id + "' contains characters not allowed in file names");
}

void check_unique(const std::vector<std::string>& ids)
{
    std::set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second)
            throw ValidationError("duplicate sample id '" + id + "'");
}

std::size_t validation_count(std::size_t n) { return (n + 2) / 5; }

void write_checked(const fs::path& path, const Eigen::MatrixXcd& m)
{
    try
    {
        write_tensor(path, to_tensor(m));
    }
    catch (const IoError&)
    {
        throw;
    }
    catch (const std::exception& e)
    {
        throw IoError(path.string() + ": " + e.what());
    }
}

} // namespace

std::size_t train_count(std::size_t n_samples)
{
    return n_samples - validation_count(n_samples);
}

ManifestRecord write_sample_files(const DatasetSample& sample, const fs::path& out_dir)
{
    check_id(sample.id);
    ManifestRecord rec;
    rec.id = sample.id;
    rec.noisy_path = sample.id + ".noisy.hfct";
    rec.clean_path = sample.id + ".clean.hfct";
    rec.snr_db = sample.snr_db;
    rec.n_rf = sample.n_rf;
    rec.n_pilot_slots = sample.n_pilot_slots;
    rec.seed = sample.seed;
    write_checked(out_dir / rec.noisy_path, sample.noisy_polar);
    write_checked(out_dir / rec.clean_path, sample.clean_polar);
    if (sample.channel.size() > 0)
    {
        rec.channel_path = sample.id + ".channel.hfct";
        write_checked(out_dir / rec.channel_path, sample.channel);
    }
    return rec;
}

fs::path write_manifest(std::vector<ManifestRecord> records, const fs::path& out_dir,
                        const json& config_snapshot, const json& dictionary_meta)
{
    if (records.empty())
        throw ValidationError("dataset has no samples");
    std::vector<std::string> ids;
    for (const auto& r : records)
        ids.push_back(r.id);
    check_unique(ids);

    // Validation records are spread evenly over the sample order so every sweep cell is
    // represented in both splits.
    const std::size_t n = records.size();
    const std::size_t n_val = validation_count(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const bool val = (i + 1) * n_val / n > i * n_val / n;
        records[i].split = val ? "validation" : "train";
    }

    json j;
    j["format"] = "hfce-dataset";
    j["version"] = 1;
    j["config"] = config_snapshot;
    j["dictionary"] = dictionary_meta;
    j["split"] = {{"train_fraction", kTrainFraction},
                  {"n_train", n - n_val},
                  {"n_validation", n_val}};
    json recs = json::array();
    for (const auto& r : records)
    {
        json jr = {{"id", r.id},
                   {"noisy_path", r.noisy_path},
                   {"clean_path", r.clean_path},
                   {"snr_db", r.snr_db},
                   {"n_rf", r.n_rf},
                   {"n_pilot_slots", r.n_pilot_slots},
                   {"seed", r.seed},
                   {"split", r.split}};
        if (!r.channel_path.empty())
            jr["channel_path"] = r.channel_path;
        recs.push_back(std::move(jr));
    }
    j["records"] = std::move(recs);

    const auto path = out_dir / kManifestName;
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out)
        throw IoError("failed writing " + path.string());
    return path;
}

fs::path export_dataset(const std::vector<DatasetSample>& samples, const fs::path& out_dir,
                        const json& config_snapshot, const json& dictionary_meta)
{
    if (samples.empty())
        throw ValidationError("dataset has no samples");
    std::vector<std::string> ids;
    for (const auto& s : samples)
    {
        check_id(s.id);
        ids.push_back(s.id);
    }
    check_unique(ids);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<ManifestRecord> records;
    records.reserve(samples.size());
    for (const auto& s : samples)
        records.push_back(write_sample_files(s, out_dir));
    return write_manifest(std::move(records), out_dir, config_snapshot, dictionary_meta);
}

Manifest load_manifest(const fs::path& path, bool check_files)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open manifest " + path.string());
    json j;
    try
    {
        j = json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ValidationError(path.string() + ": " + e.what());
    }

    Manifest m;
    m.directory = path.parent_path();
    std::vector<std::string> ids;
    try
    {
        if (j.value("format", "") != "hfce-dataset" || j.value("version", 0) != 1)
            throw ValidationError("not an hfce-dataset v1 manifest");
        m.config = j.value("config", json::object());
        m.dictionary = j.value("dictionary", json::object());
        for (const auto& jr : j.at("records"))
        {
            ManifestRecord r;
            r.id = jr.at("id").get<std::string>();
            r.noisy_path = jr.at("noisy_path").get<std::string>();
            r.clean_path = jr.at("clean_path").get<std::string>();
            r.channel_path = jr.value("channel_path", "");
            r.snr_db = jr.at("snr_db").get<double>();
            r.n_rf = jr.at("n_rf").get<int>();
            r.n_pilot_slots = jr.at("n_pilot_slots").get<int>();
            r.seed = jr.at("seed").get<std::uint64_t>();
            r.split = jr.value("split", "train");
            if (r.split != "train" && r.split != "validation")
                throw ValidationError("record '" + r.id + "' has unknown split '" + r.split + "'");
            check_id(r.id);
            ids.push_back(r.id);
            m.records.push_back(std::move(r));
        }
    }
    catch (const json::exception& e)
    {
        throw ValidationError(path.string() + ": " + e.what());
    }
    if (m.records.empty())
        throw ValidationError(path.string() + ": manifest lists no records");
    check_unique(ids);

    if (check_files)
    {
        for (const auto& r : m.records)
        {
            for (const auto* rel : {&r.noisy_path, &r.clean_path, &r.channel_path})
            {
                if (rel->empty())
                    continue;
                const auto p = m.resolve(*rel);
                if (!fs::exists(p))
                    throw ValidationError("record '" + r.id + "' references missing file " + p.string());
                try
                {
                    (void)read_tensor(p);
                }
                catch (const FormatError& e)
                {
                    throw ValidationError("record '" + r.id + "': " + e.what());
                }
            }
        }
    }
    return m;
}

} // namespace hfce
