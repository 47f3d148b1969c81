// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include "hfce/errors.hpp"
#include "hfce/evaluation.hpp"
#include "hfce/pipeline.hpp"
#include "hfce/workbench_config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

namespace hfce::cli
{

namespace fs = std::filesystem;

namespace
{

struct SynthArgs
{
    std::string config;
    std::string sweep;
    std::string out;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string dictionary;
};

struct EvalArgs
{
    std::string manifest;
    std::string denoised_dir;
    std::string out;
    bool strict = false;
};

struct ReportArgs
{
    std::string csv;
    std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out)
{
    const auto config = load_workbench_config(a.config);
    auto sweep = load_sweep_spec(a.sweep);
    if (!a.dictionary.empty())
        sweep.dictionary = parse_dictionary_kind(a.dictionary);
    SynthOptions opts;
    opts.seed = a.seed.value_or(config.system.rng_seed);
    opts.jobs = a.jobs;
    const auto manifest = synthesize_dataset(config, sweep, a.out, opts);
    out << manifest.string() << '\n';
    return kOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err)
{
    const auto manifest = load_manifest(a.manifest);
    std::optional<fs::path> denoised;
    if (!a.denoised_dir.empty())
    {
        if (!fs::is_directory(a.denoised_dir))
            throw IoError("denoised directory " + a.denoised_dir + " does not exist");
        denoised = a.denoised_dir;
    }
    const auto result = evaluate_manifest(manifest, denoised);
    for (const auto& e : result.errors)
        err << "sample " << e.id << ": " << e.message << '\n';

    if (a.out.empty())
    {
        write_csv(out, result.rows);
    }
    else
    {
        std::ofstream f(a.out);
        if (!f)
            throw IoError("cannot write " + a.out);
        write_csv(f, result.rows);
        if (!f)
            throw IoError("failed writing " + a.out);
    }
    if (!result.errors.empty())
        err << result.errors.size() << " sample(s) skipped\n";
    return a.strict && !result.errors.empty() ? kValidationError : kOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out)
{
    std::ifstream in(a.csv);
    if (!in)
        throw IoError("cannot open " + a.csv);
    const auto rows = parse_csv(in);
    for (const auto& f : write_report(rows, a.out))
        out << f.path.string() << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hybrid-field THz channel estimation workbench"};
    app.name("hfce");
    app.require_subcommand(1);

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Generate scenes, measurements and OMP estimates; export a dataset");
    s->add_option("--config", synth.config, "Workbench config (JSON)")->required();
    s->add_option("--sweep", synth.sweep, "Sweep spec (JSON)")->required();
    s->add_option("--out", synth.out, "Output dataset directory")->required();
    s->add_option("--seed", synth.seed, "Override system.rng_seed");
    s->add_option("--jobs", synth.jobs, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--dictionary", synth.dictionary, "Override the sweep dictionary")
        ->check(CLI::IsMember({"polar", "angular"}));

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "Score OMP (and optionally denoised) estimates as CSV");
    e->add_option("--manifest", ev.manifest, "Dataset manifest.json")->required();
    e->add_option("--denoised-dir", ev.denoised_dir, "Directory with <id>.hfct denoised tensors");
    e->add_option("--out", ev.out, "CSV output path (default: stdout)");
    e->add_flag("--strict", ev.strict, "Fail when any sample could not be scored");

    ReportArgs rep;
    auto* r = app.add_subcommand("report", "Split an eval CSV into per-series plot data files");
    r->add_option("--csv", rep.csv, "CSV produced by eval")->required();
    r->add_option("--out", rep.out, "Output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kOk;
    }
    catch (const CLI::ParseError& pe)
    {
        err << pe.what() << '\n';
        return kConfigError;
    }

    try
    {
        if (s->parsed())
            return cmd_synth(synth, out);
        if (e->parsed())
            return cmd_eval(ev, out, err);
        return cmd_report(rep, out);
    }
    catch (const ConfigError& ex)
    {
        err << "config error: " << ex.what() << '\n';
        return kConfigError;
    }
    catch (const IoError& ex)
    {
        err << "I/O error: " << ex.what() << '\n';
        return kIoError;
    }
    catch (const ValidationError& ex)
    {
        err << "validation error: " << ex.what() << '\n';
        return kValidationError;
    }
    catch (const FormatError& ex)
    {
        err << "format error: " << ex.what() << '\n';
        return kValidationError;
    }
    catch (const InvalidArgument& ex)
    {
        err << "invalid argument: " << ex.what() << '\n';
        return kConfigError;
    }
    catch (const std::exception& ex)
    {
        err << "error: " << ex.what() << '\n';
        return kFailure;
    }
}

} // namespace hfce::cli
