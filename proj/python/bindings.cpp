#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "jndmix/augment.hpp"
#include "jndmix/dataset.hpp"
#include "jndmix/image_io.hpp"
#include "jndmix/jnd_estimator.hpp"
#include "jndmix/metrics.hpp"
#include "jndmix/rng.hpp"

namespace py = pybind11;
using namespace jndmix;

namespace {

// Images cross the boundary as uint8 arrays of shape (h, w) or (h, w, c),
// maps as float32 arrays of the same shape.

Image image_from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
    Image image;
    if (arr.ndim() == 2) {
        image.height = static_cast<int>(arr.shape(0));
        image.width = static_cast<int>(arr.shape(1));
        image.channels = 1;
    } else if (arr.ndim() == 3 && (arr.shape(2) == 1 || arr.shape(2) == 3)) {
        image.height = static_cast<int>(arr.shape(0));
        image.width = static_cast<int>(arr.shape(1));
        image.channels = static_cast<int>(arr.shape(2));
    } else {
        throw ValidationError("image array must be (h, w), (h, w, 1) or (h, w, 3)");
    }
    const auto* data = arr.data();
    image.data.assign(data, data + arr.size());
    return image;
}

py::array array_from_image(const Image& image) {
    std::vector<py::ssize_t> shape{image.height, image.width};
    if (image.channels != 1) shape.push_back(image.channels);
    py::array_t<std::uint8_t> arr(shape);
    std::copy(image.data.begin(), image.data.end(), arr.mutable_data());
    return arr;
}

JndMap map_from_array(const py::array_t<float, py::array::c_style | py::array::forcecast>& arr) {
    JndMap map;
    if (arr.ndim() == 2) {
        map.height = static_cast<int>(arr.shape(0));
        map.width = static_cast<int>(arr.shape(1));
        map.channels = 1;
    } else if (arr.ndim() == 3) {
        map.height = static_cast<int>(arr.shape(0));
        map.width = static_cast<int>(arr.shape(1));
        map.channels = static_cast<int>(arr.shape(2));
    } else {
        throw ValidationError("map array must be (h, w) or (h, w, c)");
    }
    const auto* data = arr.data();
    map.data.assign(data, data + arr.size());
    check_jnd_map(map);
    return map;
}

py::array array_from_map(const JndMap& map) {
    std::vector<py::ssize_t> shape{map.height, map.width};
    if (map.channels != 1) shape.push_back(map.channels);
    py::array_t<float> arr(shape);
    std::copy(map.data.begin(), map.data.end(), arr.mutable_data());
    return arr;
}

struct PyAugmentedSample {
    py::array image;
    double label;
    double lambda;
    std::uint64_t seed;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "JND-bounded perceptual noise augmentation for NR-IQA datasets";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // image + map I/O
    m.def("load_image", [](const std::filesystem::path& p) { return array_from_image(load_image(p)); },
          py::arg("path"), "Decode a PNG or JPEG into a uint8 array");
    m.def("save_image",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a,
             const std::filesystem::path& p) { save_image(image_from_array(a), p); },
          py::arg("image"), py::arg("path"), "Write a lossless PNG");
    m.def("load_jnd_map",
          [](const std::filesystem::path& p) { return array_from_map(load_jnd_map(p)); },
          py::arg("path"), "Read a JNDM sidecar or 16-bit PNG threshold map");
    m.def("save_jnd_map",
          [](const py::array_t<float, py::array::c_style | py::array::forcecast>& a,
             const std::filesystem::path& p) { save_jnd_map(map_from_array(a), p); },
          py::arg("map"), py::arg("path"), "Write a JNDM sidecar (bit-exact round trip)");

    // estimator
    m.def("estimate_jnd",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
              return array_from_map(estimate_jnd(image_from_array(a)));
          },
          py::arg("image"), "Pixel-domain JND thresholds (luminance adaptation + texture masking)");
    m.def("scale_map",
          [](const py::array_t<float, py::array::c_style | py::array::forcecast>& a, double gain) {
              return array_from_map(scale_map(map_from_array(a), gain));
          },
          py::arg("map"), py::arg("gain"));

    // augmentation
    py::class_<PyAugmentedSample>(m, "AugmentedSample")
        .def_readonly("image", &PyAugmentedSample::image)
        .def_readonly("label", &PyAugmentedSample::label)
        .def_readonly("lambda_", &PyAugmentedSample::lambda)
        .def_readonly("seed", &PyAugmentedSample::seed);

    m.def("jndmix",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& image,
             double label,
             const py::array_t<float, py::array::c_style | py::array::forcecast>& jnd,
             std::uint64_t seed) {
              AugmentedSample s =
                  jndmix::jndmix(image_from_array(image), label, map_from_array(jnd), seed);
              return PyAugmentedSample{array_from_image(s.image), s.label, s.lambda, s.seed};
          },
          py::arg("image"), py::arg("label"), py::arg("jnd"), py::arg("seed"),
          "Inject sign-randomized, lambda-scaled JND noise; the label is copied unchanged");
    m.def("full_jnd_inject",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& image,
             const py::array_t<float, py::array::c_style | py::array::forcecast>& jnd) {
              return array_from_image(full_jnd_inject(image_from_array(image), map_from_array(jnd)));
          },
          py::arg("image"), py::arg("jnd"));
    m.def("gaussian_inject",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& image,
             double sigma, std::uint64_t seed) {
              return array_from_image(gaussian_inject(image_from_array(image), sigma, seed));
          },
          py::arg("image"), py::arg("sigma"), py::arg("seed"));

    // deterministic randomness
    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_u64", &Rng::next_u64)
        .def("uniform_open01", &Rng::uniform_open01);
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("index"),
          "Order-independent per-item seed");
    m.def("sample_lambda", &sample_lambda, py::arg("rng"));
    m.def("sample_sign_field",
          [](Rng& rng, int width, int height, int channels) {
              const SignField f = sample_sign_field(rng, width, height, channels);
              std::vector<py::ssize_t> shape{f.height, f.width};
              if (f.channels != 1) shape.push_back(f.channels);
              py::array_t<std::int8_t> arr(shape);
              std::copy(f.data.begin(), f.data.end(), arr.mutable_data());
              return arr;
          },
          py::arg("rng"), py::arg("width"), py::arg("height"), py::arg("channels"));

    // metrics
    m.def("srcc", [](const std::vector<double>& p, const std::vector<double>& g) { return srcc(p, g); },
          py::arg("pred"), py::arg("gt"), "Spearman rank correlation with average ranks");
    m.def("plcc", [](const std::vector<double>& p, const std::vector<double>& g) { return plcc(p, g); },
          py::arg("pred"), py::arg("gt"), "Pearson linear correlation");
    m.def("rank_with_ties",
          [](const std::vector<double>& v) { return rank_with_ties(v); }, py::arg("values"));

    // dataset protocol
    py::class_<ManifestRecord>(m, "ManifestRecord")
        .def_readonly("path", &ManifestRecord::path)
        .def_readonly("mos", &ManifestRecord::mos);
    py::class_<DatasetManifest>(m, "DatasetManifest")
        .def(py::init([](const std::vector<std::pair<std::string, double>>& records,
                         const std::string& name) {
                 DatasetManifest manifest;
                 manifest.name = name;
                 for (const auto& [path, mos] : records)
                     manifest.records.push_back({path, mos, std::to_string(mos)});
                 return manifest;
             }),
             py::arg("records"), py::arg("name") = "manifest")
        .def_readonly("name", &DatasetManifest::name)
        .def_readonly("records", &DatasetManifest::records)
        .def("__len__", [](const DatasetManifest& m_) { return m_.records.size(); });
    py::class_<Split>(m, "Split")
        .def_readonly("train", &Split::train)
        .def_readonly("test", &Split::test)
        .def_readonly("seed", &Split::seed)
        .def_readonly("train_fraction", &Split::train_fraction);
    py::class_<MetricReport>(m, "MetricReport")
        .def(py::init([](double s, double p, std::size_t n) {
                 return MetricReport{s, p, n, 0, 1.0};
             }),
             py::arg("srcc"), py::arg("plcc"), py::arg("n"))
        .def_readwrite("srcc", &MetricReport::srcc)
        .def_readwrite("plcc", &MetricReport::plcc)
        .def_readwrite("n", &MetricReport::n)
        .def_readwrite("split_seed", &MetricReport::split_seed)
        .def_readwrite("train_fraction", &MetricReport::train_fraction);

    m.def("load_manifest", &load_manifest, py::arg("path"));
    m.def("make_split", &make_split, py::arg("manifest"), py::arg("seed"));
    m.def("subsample_train", &subsample_train, py::arg("split"), py::arg("fraction"));
    m.def("repeat_protocol", &repeat_protocol, py::arg("manifest"), py::arg("repeats"),
          py::arg("fraction"), py::arg("base_seed"), py::arg("eval"),
          "Average SRCC/PLCC of eval over seeded splits");
}
