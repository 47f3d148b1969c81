// SPDX-License-Identifier: Apache-2.0
#include "hfce/dataset.hpp"
#include "hfce/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace hfce;
namespace fs = std::filesystem;

namespace
{

fs::path fresh_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("hfce_dataset_" + name);
    fs::remove_all(dir);
    return dir;
}

DatasetSample sample(const std::string& id, int s = 6, int m = 2)
{
    DatasetSample x;
    x.id = id;
    x.noisy_polar = Eigen::MatrixXcd::Random(s, m);
    x.clean_polar = Eigen::MatrixXcd::Random(s, m);
    x.snr_db = 4;
    x.n_rf = 8;
    x.n_pilot_slots = 4;
    x.seed = 17;
    return x;
}

std::size_t count_files(const fs::path& dir, const std::string& ext)
{
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir))
        n += e.path().extension() == ext;
    return n;
}

} // namespace

TEST_CASE("two samples give two records and four tensor files")
{
    const auto dir = fresh_dir("two");
    const auto a = sample("a");
    const auto manifest = export_dataset({a, sample("b")}, dir);
    CHECK(manifest == dir / "manifest.json");
    CHECK(count_files(dir, ".hfct") == 4);

    const auto m = load_manifest(manifest);
    REQUIRE(m.records.size() == 2);
    CHECK(m.records[0].id == "a");
    CHECK(m.records[0].snr_db == 4.0);
    CHECK(m.records[0].n_rf == 8);
    CHECK(m.records[0].n_pilot_slots == 4);
    CHECK(m.records[0].seed == 17);
    CHECK(m.records[0].channel_path.empty());

    const auto noisy = to_matrix(read_tensor(m.resolve(m.records[0].noisy_path)));
    CHECK((noisy - a.noisy_polar).cwiseAbs().maxCoeff() < 1e-6);
    fs::remove_all(dir);
}

TEST_CASE("eighty-twenty split")
{
    CHECK(train_count(10) == 8);
    CHECK(train_count(5) == 4);
    CHECK(train_count(100) == 80);
    CHECK(train_count(1) == 1);

    const auto dir = fresh_dir("split");
    std::vector<DatasetSample> samples;
    for (int i = 0; i < 10; ++i)
        samples.push_back(sample("s" + std::to_string(i), 2, 1));
    const auto m = load_manifest(export_dataset(samples, dir));
    int train = 0;
    int val = 0;
    for (const auto& r : m.records)
        (r.split == "train" ? train : val) += 1;
    CHECK(train == 8);
    CHECK(val == 2);

    std::ifstream in(dir / "manifest.json");
    const auto j = nlohmann::json::parse(in);
    CHECK(j["split"]["n_train"] == 8);
    CHECK(j["split"]["n_validation"] == 2);
    CHECK(j["split"]["train_fraction"] == 0.8);
    fs::remove_all(dir);
}

TEST_CASE("duplicate ids are rejected before anything is written")
{
    const auto dir = fresh_dir("dup");
    CHECK_THROWS_AS(export_dataset({sample("x"), sample("y"), sample("x")}, dir), ValidationError);
    CHECK_FALSE(fs::exists(dir));
    CHECK_THROWS_AS(export_dataset({}, dir), ValidationError);
    CHECK_THROWS_AS(export_dataset({sample("../escape")}, dir), ValidationError);
}

TEST_CASE("manifest loading validates references")
{
    const auto dir = fresh_dir("refs");
    auto with_channel = sample("c");
    with_channel.channel = Eigen::MatrixXcd::Random(4, 2);
    const auto path = export_dataset({sample("a"), with_channel}, dir, {{"note", "x"}}, {{"kind", "polar"}});
    CHECK(count_files(dir, ".hfct") == 5);
    const auto m = load_manifest(path);
    CHECK(m.config["note"] == "x");
    CHECK(m.dictionary["kind"] == "polar");
    CHECK(m.records[1].channel_path == "c.channel.hfct");

    fs::remove(dir / "a.clean.hfct");
    CHECK_THROWS_AS(load_manifest(path), ValidationError);
    CHECK_NOTHROW(load_manifest(path, false));

    {
        std::ofstream f(dir / "a.clean.hfct", std::ios::binary);
        f << "XXXXgarbage";
    }
    CHECK_THROWS_AS(load_manifest(path), ValidationError);
    CHECK_THROWS_AS(load_manifest(dir / "nope.json"), IoError);

    {
        std::ofstream f(dir / "broken.json");
        f << "{\"format\": \"hfce-dataset\", ";
    }
    CHECK_THROWS_AS(load_manifest(dir / "broken.json"), ValidationError);
    {
        std::ofstream f(dir / "dup.json");
        f << R"({"format":"hfce-dataset","version":1,"records":[
            {"id":"a","noisy_path":"a.noisy.hfct","clean_path":"c.clean.hfct","snr_db":0,"n_rf":1,"n_pilot_slots":1,"seed":0},
            {"id":"a","noisy_path":"a.noisy.hfct","clean_path":"c.clean.hfct","snr_db":0,"n_rf":1,"n_pilot_slots":1,"seed":0}]})";
    }
    CHECK_THROWS_AS(load_manifest(dir / "dup.json"), ValidationError);
    fs::remove_all(dir);
}

TEST_CASE("unwritable destination is an I/O error with the path")
{
    const auto blocker = fresh_dir("blocker");
    {
        std::ofstream f(blocker);
        f << "a file, not a directory";
    }
    try
    {
        export_dataset({sample("a")}, blocker / "sub");
        FAIL("expected I/O error");
    }
    catch (const IoError& e)
    {
        CHECK(std::string(e.what()).find("sub") != std::string::npos);
    }
    fs::remove_all(blocker);
}
