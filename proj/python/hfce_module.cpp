// SPDX-License-Identifier: Apache-2.0
#include "hfce/dataset.hpp"
#include "hfce/errors.hpp"
#include "hfce/measurement.hpp"
#include "hfce/omp.hpp"
#include "hfce/polar_dictionary.hpp"
#include "hfce/propagation.hpp"
#include "hfce/scene.hpp"
#include "hfce/steering.hpp"
#include "hfce/tensor_io.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace hfce;

namespace
{

using ComplexArray = py::array_t<std::complex<float>, py::array::c_style | py::array::forcecast>;

ComplexArray tensor_to_array(const ComplexTensor& t)
{
    std::vector<py::ssize_t> shape(t.dims.begin(), t.dims.end());
    ComplexArray arr(shape);
    std::copy(t.data.begin(), t.data.end(), arr.mutable_data());
    return arr;
}

ComplexTensor array_to_tensor(const ComplexArray& arr)
{
    ComplexTensor t;
    for (py::ssize_t i = 0; i < arr.ndim(); ++i)
        t.dims.push_back(static_cast<std::uint32_t>(arr.shape(i)));
    t.data.assign(arr.data(), arr.data() + arr.size());
    return t;
}

} // namespace

PYBIND11_MODULE(_hfce, m)
{
    m.doc() = "Hybrid-field THz channel estimation core";

    py::register_exception<FormatError>(m, "HfctFormatError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("n_antennas", &SystemConfig::n_antennas)
        .def_readwrite("n_rf_chains", &SystemConfig::n_rf_chains)
        .def_readwrite("n_pilot_slots", &SystemConfig::n_pilot_slots)
        .def_readwrite("n_subcarriers", &SystemConfig::n_subcarriers)
        .def_readwrite("carrier_freq_hz", &SystemConfig::carrier_freq_hz)
        .def_readwrite("bandwidth_hz", &SystemConfig::bandwidth_hz)
        .def_readwrite("element_spacing_m", &SystemConfig::element_spacing_m)
        .def_readwrite("rng_seed", &SystemConfig::rng_seed)
        .def_property_readonly("wavelength_m", &SystemConfig::wavelength_m)
        .def_property_readonly("spacing_m", &SystemConfig::spacing_m)
        .def_property_readonly("aperture_m", &SystemConfig::aperture_m)
        .def_property_readonly("rayleigh_distance_m", &SystemConfig::rayleigh_distance_m)
        .def("subcarrier_freq_hz", &SystemConfig::subcarrier_freq_hz)
        .def("validate", &SystemConfig::validate);

    py::class_<AbsorptionTable>(m, "AbsorptionTable")
        .def(py::init<>())
        .def(py::init([](const std::vector<std::pair<double, double>>& rows) {
            std::vector<AbsorptionTable::Entry> e;
            for (const auto& [f, k] : rows)
                e.push_back({f, k});
            return AbsorptionTable(std::move(e));
        }))
        .def_static("constant", &AbsorptionTable::constant)
        .def_static("from_csv", &AbsorptionTable::from_csv)
        .def("at", &AbsorptionTable::at);

    py::class_<MaterialParams>(m, "MaterialParams")
        .def(py::init<>())
        .def_readwrite("refractive_index", &MaterialParams::refractive_index)
        .def_readwrite("roughness_std_m", &MaterialParams::roughness_std_m)
        .def_readwrite("incidence_angle_rad", &MaterialParams::incidence_angle_rad);

    py::class_<SceneParams>(m, "SceneParams")
        .def(py::init<>())
        .def_readwrite("l_far", &SceneParams::l_far)
        .def_readwrite("l_near", &SceneParams::l_near)
        .def_readwrite("los_range_min_m", &SceneParams::los_range_min_m)
        .def_readwrite("los_range_max_m", &SceneParams::los_range_max_m)
        .def_readwrite("near_range_fraction", &SceneParams::near_range_fraction)
        .def_readwrite("material", &SceneParams::material)
        .def_readwrite("absorption", &SceneParams::absorption);

    py::class_<SceneRealization>(m, "SceneRealization")
        .def_readonly("l_far", &SceneRealization::l_far)
        .def_readonly("l_near", &SceneRealization::l_near)
        .def_property_readonly("paths", [](const SceneRealization& s) {
            py::list out;
            for (const auto& p : s.paths)
            {
                py::dict d;
                d["kind"] = p.kind == PathKind::FarLos ? "far_los" : "near_nlos";
                d["gain"] = p.gain;
                d["angle_rad"] = p.angle_rad;
                d["distance_m"] = p.distance_m;
                d["delay_s"] = p.delay_s;
                d["scatter_leg1_m"] = p.scatter_leg1_m;
                d["scatter_leg2_m"] = p.scatter_leg2_m;
                out.append(d);
            }
            return out;
        });

    m.def("far_steering", &far_steering, py::arg("angle_rad"), py::arg("n_antennas"),
          py::arg("spacing_over_lambda"));
    m.def("element_distance", &element_distance, py::arg("r_m"), py::arg("angle_rad"),
          py::arg("element_index"), py::arg("n_antennas"), py::arg("spacing_m"));
    m.def("near_steering", &near_steering, py::arg("angle_rad"), py::arg("r_m"),
          py::arg("n_antennas"), py::arg("spacing_m"), py::arg("lambda_m"));
    m.def("los_gain", &los_gain, py::arg("freq_hz"), py::arg("range_m"),
          py::arg("absorption") = AbsorptionTable(), py::arg("delay_s") = 0.0);
    m.def("nlos_gain", &nlos_gain, py::arg("freq_hz"), py::arg("leg1_m"), py::arg("leg2_m"),
          py::arg("absorption") = AbsorptionTable(), py::arg("material") = MaterialParams(),
          py::arg("delay_s") = 0.0);

    m.def("generate_scene", [](const SystemConfig& c, const SceneParams& p, std::uint64_t seed) {
        auto rng = make_stream(seed);
        return generate_scene(c, p, rng);
    }, py::arg("config"), py::arg("params"), py::arg("seed"));
    m.def("assemble_channel", [](const SceneRealization& s, const SystemConfig& c) {
        return assemble_channel(s, c).coeffs;
    }, py::arg("scene"), py::arg("config"));

    py::class_<PolarDictionary>(m, "PolarDictionary")
        .def_property_readonly("matrix", &PolarDictionary::matrix)
        .def_property_readonly("angle_grid", &PolarDictionary::angle_grid)
        .def_property_readonly("rings", &PolarDictionary::rings)
        .def_property_readonly("ring_counts", &PolarDictionary::ring_counts)
        .def_property_readonly("n_columns", &PolarDictionary::n_columns)
        .def("mutual_coherence", &PolarDictionary::mutual_coherence);
    m.def("build_polar_dictionary",
          [](const SystemConfig& c, int n_angles, double beta, double min_distance_m, int max_rings) {
              PolarDictionarySettings s{n_angles, beta, min_distance_m, max_rings};
              return build_polar_dictionary(c, s);
          },
          py::arg("config"), py::arg("n_angles") = 0, py::arg("beta") = 1.2,
          py::arg("min_distance_m") = 3.0, py::arg("max_rings_per_angle") = 64);
    m.def("build_angular_dictionary", &build_angular_dictionary, py::arg("config"));

    py::enum_<CombinerMode>(m, "CombinerMode")
        .value("UniformReal", CombinerMode::UniformReal)
        .value("UnitModulusPhase", CombinerMode::UnitModulusPhase);
    py::class_<CombiningMatrix>(m, "CombiningMatrix")
        .def_readonly("matrix", &CombiningMatrix::matrix)
        .def_readonly("n_rf_chains", &CombiningMatrix::n_rf_chains)
        .def_readonly("n_pilot_slots", &CombiningMatrix::n_pilot_slots);
    m.def("generate_combiner", [](const SystemConfig& c, CombinerMode mode, std::uint64_t seed) {
        auto rng = make_stream(seed);
        return generate_combiner(c, mode, rng);
    }, py::arg("config"), py::arg("mode") = CombinerMode::UniformReal, py::arg("seed") = 0);
    m.def("observe", [](const Eigen::MatrixXcd& h, const CombiningMatrix& w, double snr_db, std::uint64_t seed) {
        auto rng = make_stream(seed);
        auto set = observe(h, w, snr_db, rng);
        return py::make_tuple(set.observations, set.noise_variance);
    }, py::arg("channel"), py::arg("combiner"), py::arg("snr_db"), py::arg("seed") = 0,
       "Returns (observations, noise_variance).");

    py::class_<SparseEstimate>(m, "SparseEstimate")
        .def_readonly("support", &SparseEstimate::support)
        .def_readonly("coeffs_polar", &SparseEstimate::coeffs_polar)
        .def_readonly("reconstructed", &SparseEstimate::reconstructed)
        .def_readonly("residual_norms", &SparseEstimate::residual_norms)
        .def_readonly("rank_deficient", &SparseEstimate::rank_deficient);
    m.def("omp", [](const Eigen::MatrixXcd& y, const CombiningMatrix& w, const PolarDictionary& d,
                    int iterations, bool least_squares) {
        OmpOptions o;
        o.iterations = iterations;
        o.update = least_squares ? CoefficientUpdate::LeastSquares : CoefficientUpdate::MatchedFilter;
        return omp(y, w, d, o);
    }, py::arg("observations"), py::arg("combiner"), py::arg("dictionary"), py::arg("iterations"),
       py::arg("least_squares") = true);
    m.def("nmse", &nmse, py::arg("truth"), py::arg("estimate"));
    m.def("nmse_db", &nmse_db, py::arg("truth"), py::arg("estimate"));

    m.def("write_tensor", [](const std::filesystem::path& p, const ComplexArray& a) {
        write_tensor(p, array_to_tensor(a));
    }, py::arg("path"), py::arg("array"));
    m.def("read_tensor", [](const std::filesystem::path& p) { return tensor_to_array(read_tensor(p)); },
          py::arg("path"));

    m.def("load_manifest", [](const std::filesystem::path& p, bool check_files) {
        const auto man = load_manifest(p, check_files);
        py::list records;
        for (const auto& r : man.records)
        {
            py::dict d;
            d["id"] = r.id;
            d["noisy_path"] = man.resolve(r.noisy_path);
            d["clean_path"] = man.resolve(r.clean_path);
            d["channel_path"] = r.channel_path.empty() ? py::none() : py::cast(man.resolve(r.channel_path));
            d["snr_db"] = r.snr_db;
            d["n_rf"] = r.n_rf;
            d["n_pilot_slots"] = r.n_pilot_slots;
            d["seed"] = r.seed;
            d["split"] = r.split;
            records.append(d);
        }
        return records;
    }, py::arg("path"), py::arg("check_files") = true);
}
