// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"
#include "hfce/dataset.hpp"
#include "small_config.hpp"

#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

namespace fs = std::filesystem;
using hfce::cli::run;

namespace
{

const fs::path kConfigs = fs::path(HFCE_SOURCE_DIR) / "configs";

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome call(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream f(p);
    f << text;
}

} // namespace

TEST_CASE("usage errors")
{
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"synth", "--config", "x.json"}).code == 2);
    CHECK(call({"synth", "--config", "a", "--sweep", "b", "--out", "c", "--dictionary", "dft"}).code == 2);
    const auto help = call({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("synth") != std::string::npos);
}

TEST_CASE("synth: one trial on a 1x1x1 grid exports one sample")
{
    const auto dir = fresh_tmp("cli_one");
    const auto r = call({"synth", "--config", (kConfigs / "desk.json").string(), "--sweep",
                         (kConfigs / "sweep_smoke.json").string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto m = hfce::load_manifest(dir / "manifest.json");
    CHECK(m.records.size() == 1);
    fs::remove_all(dir);
}

TEST_CASE("synth is deterministic and --seed changes the output")
{
    const auto a = fresh_tmp("cli_det_a");
    const auto b = fresh_tmp("cli_det_b");
    const auto c = fresh_tmp("cli_det_c");
    const auto cfg = (kConfigs / "desk.json").string();
    const auto sweep = (kConfigs / "sweep_smoke.json").string();
    REQUIRE(call({"synth", "--config", cfg, "--sweep", sweep, "--out", a.string()}).code == 0);
    REQUIRE(call({"synth", "--config", cfg, "--sweep", sweep, "--out", b.string(), "--jobs", "2"}).code == 0);
    REQUIRE(call({"synth", "--config", cfg, "--sweep", sweep, "--out", c.string(), "--seed", "2"}).code == 0);
    for (const auto& e : fs::directory_iterator(a))
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    const auto id = hfce::load_manifest(a / "manifest.json").records[0].id;
    CHECK(slurp(a / (id + ".noisy.hfct")) != slurp(c / (id + ".noisy.hfct")));

    const auto e1 = call({"eval", "--manifest", (a / "manifest.json").string()});
    const auto e2 = call({"eval", "--manifest", (b / "manifest.json").string()});
    CHECK(e1.code == 0);
    CHECK(e1.out == e2.out);
    CHECK(e1.out.rfind("snr_db,n_rf,n_pilots,dictionary,method,nmse_db_mean,nmse_db_stderr\n", 0) == 0);
    for (const auto& d : {a, b, c})
        fs::remove_all(d);
}

TEST_CASE("synth error codes")
{
    const auto dir = fresh_tmp("cli_errs");
    fs::create_directories(dir);
    const auto sweep = (kConfigs / "sweep_smoke.json").string();
    write(dir / "broken.json", "{\n \"system\": {\n  \"n_antennas\": 64,,\n }\n}");
    const auto broken = call({"synth", "--config", (dir / "broken.json").string(), "--sweep", sweep, "--out",
                              (dir / "o").string()});
    CHECK(broken.code == 2);
    CHECK(broken.err.find("broken.json:3:") != std::string::npos);

    CHECK(call({"synth", "--config", (dir / "absent.json").string(), "--sweep", sweep, "--out",
                (dir / "o").string()})
              .code == 3);

    write(dir / "big.json", R"({"n_rf_grid": [64], "fixed_n_pilots": 4, "pilot_grid": [1], "fixed_n_rf": 1})");
    CHECK(call({"synth", "--config", (kConfigs / "desk.json").string(), "--sweep", (dir / "big.json").string(),
                "--out", (dir / "o").string()})
              .code == 2);
    fs::remove_all(dir);
}

TEST_CASE("eval: denoised directory handling and exit codes")
{
    const auto data = fresh_tmp("cli_eval");
    REQUIRE(call({"synth", "--config", (kConfigs / "desk.json").string(), "--sweep",
                  (kConfigs / "sweep_smoke.json").string(), "--out", data.string()})
                .code == 0);
    const auto manifest = (data / "manifest.json").string();
    const auto den = fresh_tmp("cli_eval_den");
    fs::create_directories(den);

    const auto missing = call({"eval", "--manifest", manifest, "--denoised-dir", den.string()});
    CHECK(missing.code == 0);
    CHECK(missing.err.find("missing denoised tensor") != std::string::npos);
    CHECK(call({"eval", "--manifest", manifest, "--denoised-dir", den.string(), "--strict"}).code == 4);
    CHECK(call({"eval", "--manifest", manifest, "--denoised-dir", (den / "nope").string()}).code == 3);

    const auto rec = hfce::load_manifest(data / "manifest.json").records[0];
    fs::copy_file(data / rec.clean_path, den / (rec.id + ".hfct"));
    const auto csv = (den / "out.csv").string();
    const auto ok = call({"eval", "--manifest", manifest, "--denoised-dir", den.string(), "--out", csv, "--strict"});
    CHECK(ok.code == 0);
    const auto text = slurp(csv);
    CHECK(text.find(",polar,omp,") != std::string::npos);
    CHECK(text.find(",polar,omp+denoiser,") != std::string::npos);

    CHECK(call({"eval", "--manifest", (data / "none.json").string()}).code == 3);
    write(data / "bad.json", "{\"format\": \"something else\", \"version\": 1, \"records\": []}");
    CHECK(call({"eval", "--manifest", (data / "bad.json").string()}).code == 4);
    fs::remove(data / rec.noisy_path);
    CHECK(call({"eval", "--manifest", manifest}).code == 4);
    fs::remove_all(data);
    fs::remove_all(den);
}

TEST_CASE("report exit codes")
{
    const auto dir = fresh_tmp("cli_report");
    fs::create_directories(dir);
    write(dir / "empty.csv", "");
    CHECK(call({"report", "--csv", (dir / "empty.csv").string(), "--out", (dir / "o").string()}).code == 4);
    write(dir / "header.csv", "snr_db,n_rf,n_pilots,dictionary,method,nmse_db_mean,nmse_db_stderr\n");
    CHECK(call({"report", "--csv", (dir / "header.csv").string(), "--out", (dir / "o").string()}).code == 4);
    CHECK(call({"report", "--csv", (dir / "absent.csv").string(), "--out", (dir / "o").string()}).code == 3);
    write(dir / "ok.csv", "snr_db,n_rf,n_pilots,dictionary,method,nmse_db_mean,nmse_db_stderr\n0,8,4,polar,omp,-3,0.2\n");
    const auto r = call({"report", "--csv", (dir / "ok.csv").string(), "--out", (dir / "o").string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "o" / "polar_omp_nrf8_q4.dat"));
    fs::remove_all(dir);
}
