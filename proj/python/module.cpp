#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hseg/eval.hpp"
#include "hseg/pipeline.hpp"

namespace py = pybind11;

namespace {

using U8Array = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;
using U32Array = py::array_t<uint32_t, py::array::c_style | py::array::forcecast>;

hseg::Raster to_raster(const U8Array& a) {
    if (a.ndim() != 3 || a.shape(2) != 3)
        throw std::invalid_argument("expected an HxWx3 uint8 array");
    hseg::Raster img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    auto view = a.unchecked<3>();
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            img.at(x, y) = {view(y, x, 0), view(y, x, 1), view(y, x, 2)};
    return img;
}

hseg::LabelMap to_labels(const U32Array& a) {
    if (a.ndim() != 2)
        throw std::invalid_argument("expected an HxW label array");
    hseg::LabelMap lm(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    auto view = a.unchecked<2>();
    for (int y = 0; y < lm.height; ++y)
        for (int x = 0; x < lm.width; ++x)
            lm.at(x, y) = view(y, x);
    return lm;
}

py::array from_labels(const hseg::LabelMap& lm) {
    py::array_t<uint32_t> out({lm.height, lm.width});
    auto view = out.mutable_unchecked<2>();
    for (int y = 0; y < lm.height; ++y)
        for (int x = 0; x < lm.width; ++x)
            view(y, x) = lm.at(x, y);
    return out;
}

hseg::PipelineConfig make_config(int k, bool auto_k, double a, int kprime, int l, int bins,
                                 double beta1, double beta2, double alpha, double t, double sigma) {
    hseg::PipelineConfig cfg;
    cfg.decomp.model.dominant_count = k;
    cfg.decomp.model.dominant_area = a;
    cfg.decomp.model.noise_count = kprime;
    cfg.decomp.chaos_threshold = l;
    cfg.decomp.bins = bins;
    cfg.filters.scale_damping = beta1;
    cfg.filters.similarity_damping = beta2;
    cfg.filters.amplitude = alpha;
    cfg.filters.similarity_threshold = t;
    cfg.edges.sigma = sigma;
    cfg.auto_k = auto_k;
    return cfg;
}

constexpr const char* kParamDoc =
    "k/auto_k set the dominant segment count (or search for it); a, kprime and l\n"
    "shape the decomposition stopping rule; beta1, beta2, alpha and t shape the\n"
    "boundary confidence filters.";

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entropy-driven hierarchical image segmentation";

    m.def("luminance", [](int r, int g, int b) {
        return hseg::luminance({static_cast<uint8_t>(r), static_cast<uint8_t>(g), static_cast<uint8_t>(b)});
    });

    m.def(
        "noise_bound",
        [](int k, double a, int kprime) {
            return hseg::noise_bound({k, a, kprime});
        },
        py::arg("k"), py::arg("a"), py::arg("kprime"),
        "Entropy stopping bound -(a ln(a/k) + (1-a) ln((1-a)/k')).");

    m.def(
        "noise_redundancy",
        [](int k, double a, int kprime) {
            return hseg::noise_redundancy({k, a, kprime});
        },
        py::arg("k"), py::arg("a"), py::arg("kprime"));

    m.def(
        "histogram_entropy",
        [](const std::vector<uint64_t>& counts) {
            hseg::Histogram hist;
            hist.counts = counts;
            for (uint64_t c : counts)
                hist.total += c;
            return hseg::histogram_entropy(hist);
        },
        py::arg("counts"), "Shannon entropy in nats of a count vector.");

    m.def(
        "scale_filter",
        [](double s, double beta1) {
            hseg::FilterParams p;
            p.scale_damping = beta1;
            return hseg::scale_filter(s, p);
        },
        py::arg("s"), py::arg("beta1") = 8.0);

    m.def(
        "similarity_filter",
        [](double x, double s, double beta2, double alpha, double t) {
            hseg::FilterParams p;
            p.similarity_damping = beta2;
            p.amplitude = alpha;
            p.similarity_threshold = t;
            return hseg::similarity_filter(x, s, p);
        },
        py::arg("x"), py::arg("s"), py::arg("beta2") = 3.0, py::arg("alpha") = 1.0, py::arg("t") = 0.994);

    m.def(
        "boundary_confidence",
        [](double s, double x, double beta1, double beta2, double alpha, double t) {
            hseg::FilterParams p;
            p.scale_damping = beta1;
            p.similarity_damping = beta2;
            p.amplitude = alpha;
            p.similarity_threshold = t;
            return hseg::boundary_confidence(s, x, p);
        },
        py::arg("s"), py::arg("x"), py::arg("beta1") = 8.0, py::arg("beta2") = 3.0,
        py::arg("alpha") = 1.0, py::arg("t") = 0.994);

    m.def(
        "segment",
        [](const U8Array& image, py::object n_segments, py::object threshold, int k, bool auto_k,
           double a, int kprime, int l, int bins, double beta1, double beta2, double alpha, double t,
           double sigma) {
            if (!n_segments.is_none() && !threshold.is_none())
                throw std::invalid_argument("pass only one of n_segments / threshold");
            const hseg::Raster img = to_raster(image);
            const auto cfg = make_config(k, auto_k, a, kprime, l, bins, beta1, beta2, alpha, t, sigma);
            const hseg::PipelineResult res = hseg::run_pipeline(img, cfg);
            if (!n_segments.is_none())
                return from_labels(hseg::cut_by_count(res.merge_tree, res.graph.labels,
                                                      n_segments.cast<uint32_t>()));
            if (!threshold.is_none())
                return from_labels(hseg::cut_by_threshold(res.merge_tree, res.graph.labels,
                                                          threshold.cast<double>()));
            return from_labels(res.graph.labels); // initial segmentation
        },
        py::arg("image"), py::arg("n_segments") = py::none(), py::arg("threshold") = py::none(),
        py::arg("k") = 3, py::arg("auto_k") = false, py::arg("a") = 0.998, py::arg("kprime") = 3,
        py::arg("l") = 3, py::arg("bins") = 64, py::arg("beta1") = 8.0, py::arg("beta2") = 3.0,
        py::arg("alpha") = 1.0, py::arg("t") = 0.994, py::arg("sigma") = 1.0,
        kParamDoc);

    m.def(
        "boundary_map",
        [](const U8Array& image, int k, bool auto_k, double a, int kprime, int l, int bins,
           double beta1, double beta2, double alpha, double t, double sigma) {
            const hseg::Raster img = to_raster(image);
            const auto cfg = make_config(k, auto_k, a, kprime, l, bins, beta1, beta2, alpha, t, sigma);
            const hseg::PipelineResult res = hseg::run_pipeline(img, cfg);
            const std::vector<uint8_t> gray = hseg::boundary_image(res.graph);
            py::array_t<uint8_t> out({img.height, img.width});
            std::copy(gray.begin(), gray.end(), out.mutable_data());
            return out;
        },
        py::arg("image"), py::arg("k") = 3, py::arg("auto_k") = false, py::arg("a") = 0.998,
        py::arg("kprime") = 3, py::arg("l") = 3, py::arg("bins") = 64, py::arg("beta1") = 8.0,
        py::arg("beta2") = 3.0, py::arg("alpha") = 1.0, py::arg("t") = 0.994, py::arg("sigma") = 1.0,
        "Confidence-weighted boundary image (uint8, round(cnf*255) on boundary pixels).");

    m.def(
        "merge_tree_json",
        [](const U8Array& image, int k, bool auto_k, double a, int kprime, int l, int bins,
           double beta1, double beta2, double alpha, double t, double sigma) {
            const hseg::Raster img = to_raster(image);
            const auto cfg = make_config(k, auto_k, a, kprime, l, bins, beta1, beta2, alpha, t, sigma);
            return hseg::merge_tree_to_json(hseg::run_pipeline(img, cfg).merge_tree);
        },
        py::arg("image"), py::arg("k") = 3, py::arg("auto_k") = false, py::arg("a") = 0.998,
        py::arg("kprime") = 3, py::arg("l") = 3, py::arg("bins") = 64, py::arg("beta1") = 8.0,
        py::arg("beta2") = 3.0, py::arg("alpha") = 1.0, py::arg("t") = 0.994, py::arg("sigma") = 1.0);

    m.def(
        "find_optimization_point",
        [](const U8Array& image, double a, int kprime, int l, int bins) {
            hseg::DecompParams params;
            params.model.dominant_area = a;
            params.model.noise_count = kprime;
            params.chaos_threshold = l;
            params.bins = bins;
            return hseg::find_optimization_point(to_raster(image), params);
        },
        py::arg("image"), py::arg("a") = 0.998, py::arg("kprime") = 3, py::arg("l") = 3,
        py::arg("bins") = 64, "Smallest k >= 3 that leaves no chaos windows.");

    m.def(
        "evaluate",
        [](const U8Array& image, const U32Array& labels, int bins) {
            const hseg::EvalReport r = hseg::evaluate(to_raster(image), to_labels(labels), bins);
            py::dict out;
            out["q"] = r.q;
            out["h_r"] = r.h_r;
            out["h_l"] = r.h_l;
            out["e"] = r.e;
            out["regions"] = r.regions;
            return out;
        },
        py::arg("image"), py::arg("labels"), py::arg("bins") = 64,
        "Unsupervised segmentation scores for a label map.");
}
