// SPDX-License-Identifier: Apache-2.0
#include "hfce/pipeline.hpp"

#include "hfce/errors.hpp"
#include "hfce/measurement.hpp"
#include "hfce/scene.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace hfce
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

enum StreamTag : std::uint64_t
{
    kSceneStream = 0,
    kCombinerStream = 1,
    kNoiseStream = 2,
};

} // namespace

PolarDictionary build_dictionary(const WorkbenchConfig& config, DictionaryKind kind)
{
    return kind == DictionaryKind::Polar ? build_polar_dictionary(config.system, config.dictionary)
                                         : build_angular_dictionary(config.system);
}

PolarProjector::PolarProjector(const PolarDictionary& dict)
    : dict_(&dict),
      pseudo_inverse_(Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd>(dict.matrix()).pseudoInverse())
{
}

Eigen::MatrixXcd PolarProjector::represent(const Eigen::MatrixXcd& channel, int sparsity) const
{
    const auto& u = dict_->matrix();
    OmpOptions opts;
    opts.iterations = sparsity;
    auto fit = omp_sensing(channel, u, u, opts);
    Eigen::MatrixXcd coeffs = fit.coeffs_polar;
    coeffs += pseudo_inverse_ * (channel - u * coeffs);
    return coeffs;
}

TrialResult run_trial(const WorkbenchConfig& config, const PolarDictionary& dict,
                      const TrialKey& key, std::uint64_t seed)
{
    SystemConfig sys = config.system;
    sys.n_rf_chains = key.cell.n_rf;
    sys.n_pilot_slots = key.cell.n_pilots;

    const auto trial = static_cast<std::uint64_t>(key.trial);
    const auto rf = static_cast<std::uint64_t>(key.cell.n_rf);
    const auto q = static_cast<std::uint64_t>(key.cell.n_pilots);

    auto scene_rng = make_stream(seed, {trial, kSceneStream});
    const auto scene = generate_scene(sys, config.scene, scene_rng);
    const auto channel = assemble_channel(scene, sys);

    auto comb_rng = make_stream(seed, {trial, kCombinerStream, rf, q});
    const auto combiner = generate_combiner(sys, config.estimator.combiner, comb_rng);

    auto noise_rng = make_stream(seed, {trial, kNoiseStream, rf, q, std::bit_cast<std::uint64_t>(key.snr_db)});
    const auto meas = observe(channel, combiner, key.snr_db, noise_rng);

    OmpOptions opts;
    opts.iterations = config.estimator.fixed_sparsity.value_or(scene.n_paths());
    opts.update = config.estimator.update;
    opts.selection = config.estimator.selection;
    auto est = omp(meas.observations, combiner, dict, opts);

    TrialResult r;
    r.channel = channel.coeffs;
    r.noisy_polar = std::move(est.coeffs_polar);
    r.estimate = std::move(est.reconstructed);
    r.sparsity = opts.iterations;
    r.rank_deficient = est.rank_deficient;
    r.nmse_db = nmse_db(r.channel, r.estimate);
    return r;
}

std::string sample_id(const TrialKey& key)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "nrf%d_q%d_snr%+g_t%05d", key.cell.n_rf, key.cell.n_pilots,
                  key.snr_db, key.trial);
    return buf;
}

json dictionary_metadata(const PolarDictionary& dict, DictionaryKind kind,
                         const PolarDictionarySettings& settings)
{
    json j = {{"kind", to_string(kind)},
              {"n_rows", dict.n_rows()},
              {"n_columns", dict.n_columns()},
              {"n_angles", dict.angle_grid().size()},
              {"n_far_columns", dict.n_far_columns()},
              {"n_near_columns", dict.n_near_columns()},
              {"ring_counts", dict.ring_counts()},
              {"beta", dict.beta()},
              {"mutual_coherence", dict.mutual_coherence()}};
    if (kind == DictionaryKind::Polar)
    {
        j["min_distance_m"] = settings.min_distance_m;
        j["max_rings_per_angle"] = settings.max_rings_per_angle;
    }
    return j;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn)
{
    const auto n_threads = static_cast<std::size_t>(std::max(1, jobs));
    if (n_threads == 1 || count < 2)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;)
        {
            const auto i = next.fetch_add(1);
            if (i >= count)
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(n_threads, count); ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

fs::path synthesize_dataset(const WorkbenchConfig& config, const SweepSpec& sweep,
                            const fs::path& out_dir, const SynthOptions& options)
{
    sweep.validate(config.system);
    const auto dict = build_dictionary(config, sweep.dictionary);
    const PolarProjector projector(dict);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    auto dict_meta = dictionary_metadata(dict, sweep.dictionary, config.dictionary);
    if (options.export_dictionary)
    {
        export_dictionary(dict, out_dir / "dictionary.hfct");
        dict_meta["path"] = "dictionary.hfct";
    }

    std::vector<TrialKey> keys;
    for (const auto& cell : sweep.cells())
        for (std::size_t s = 0; s < sweep.snr_grid_db.size(); ++s)
            for (int t = 0; t < sweep.n_trials; ++t)
                keys.push_back({cell, static_cast<int>(s), sweep.snr_grid_db[s], t});

    std::vector<ManifestRecord> records(keys.size());
    parallel_for(keys.size(), options.jobs, [&](std::size_t i) {
        const auto& key = keys[i];
        auto result = run_trial(config, dict, key, options.seed);
        DatasetSample sample;
        sample.id = sample_id(key);
        sample.clean_polar = projector.represent(result.channel, result.sparsity);
        sample.noisy_polar = std::move(result.noisy_polar);
        sample.channel = std::move(result.channel);
        sample.snr_db = key.snr_db;
        sample.n_rf = key.cell.n_rf;
        sample.n_pilot_slots = key.cell.n_pilots;
        sample.seed = options.seed;
        records[i] = write_sample_files(sample, out_dir);
    });

    json snapshot = {{"workbench", to_json(config)}, {"sweep", to_json(sweep)}, {"seed", options.seed}};
    return write_manifest(std::move(records), out_dir, snapshot, dict_meta);
}

} // namespace hfce
