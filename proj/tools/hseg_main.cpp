// Command-line front end: segment / boundaries / tree / eval / auto-k.
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hseg/eval.hpp"
#include "hseg/image_io.hpp"
#include "hseg/pipeline.hpp"

namespace {

struct Options {
    std::string input;
    std::string out_dir = ".";
    std::string labels_path;
    std::string k = "3";
    double a = 0.998;
    int kprime = 3;
    int l = 3;
    int bins = 64;
    double beta1 = 8.0;
    double beta2 = 3.0;
    double alpha = 1.0;
    double t = 0.994;
    double sigma = 1.0;
    double edge_low = 0.1;
    double edge_high = 0.2;
    std::string measure = "cosine";
    std::string preset;
    double t_visual = 0.0;
    long long n_visual = 0;
};

void add_pipeline_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--k", opt.k, "dominant segment count, or 'auto' for the optimization point");
    cmd->add_option("--a", opt.a, "dominant-area fraction of the noise model");
    cmd->add_option("--kprime", opt.kprime, "noise segment count of the noise model");
    cmd->add_option("--l", opt.l, "chaos size threshold in pixels");
    cmd->add_option("--bins", opt.bins, "luminance histogram bins");
    cmd->add_option("--beta1", opt.beta1, "scale damping coefficient");
    cmd->add_option("--beta2", opt.beta2, "similarity damping coefficient");
    cmd->add_option("--alpha", opt.alpha, "similarity amplitude modulation");
    cmd->add_option("--t", opt.t, "similarity threshold");
    cmd->add_option("--sigma", opt.sigma, "edge detector Gaussian sigma");
    cmd->add_option("--edge-low", opt.edge_low, "hysteresis low threshold (fraction of max gradient)");
    cmd->add_option("--edge-high", opt.edge_high, "hysteresis high threshold (fraction of max gradient)");
    cmd->add_option("--measure", opt.measure, "similarity measure: cosine|dice|jaccard|overlap");
    cmd->add_option("--preset", opt.preset, "parameter preset: default|steep");
}

hseg::PipelineConfig make_config(const CLI::App* cmd, const Options& opt) {
    hseg::PipelineConfig cfg;
    if (!opt.preset.empty())
        hseg::apply_preset(cfg, opt.preset);
    if (cmd->count("--beta1"))
        cfg.filters.scale_damping = opt.beta1;
    if (cmd->count("--beta2"))
        cfg.filters.similarity_damping = opt.beta2;
    if (cmd->count("--alpha"))
        cfg.filters.amplitude = opt.alpha;
    if (cmd->count("--t"))
        cfg.filters.similarity_threshold = opt.t;

    if (opt.measure == "cosine")
        cfg.filters.measure = hseg::SimilarityMeasure::Cosine;
    else if (opt.measure == "dice")
        cfg.filters.measure = hseg::SimilarityMeasure::Dice;
    else if (opt.measure == "jaccard")
        cfg.filters.measure = hseg::SimilarityMeasure::Jaccard;
    else if (opt.measure == "overlap")
        cfg.filters.measure = hseg::SimilarityMeasure::Overlap;
    else
        throw std::invalid_argument("unknown similarity measure: " + opt.measure);

    if (opt.k == "auto") {
        cfg.auto_k = true;
    } else {
        try {
            cfg.decomp.model.dominant_count = std::stoi(opt.k);
        } catch (const std::exception&) {
            throw std::invalid_argument("--k expects an integer or 'auto'");
        }
        if (cfg.decomp.model.dominant_count < 1)
            throw std::invalid_argument("--k must be at least 1");
    }
    cfg.decomp.model.dominant_area = opt.a;
    cfg.decomp.model.noise_count = opt.kprime;
    cfg.decomp.chaos_threshold = opt.l;
    cfg.decomp.bins = opt.bins;
    cfg.edges.sigma = opt.sigma;
    cfg.edges.low = opt.edge_low;
    cfg.edges.high = opt.edge_high;
    return cfg;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out << text;
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

std::filesystem::path prepare_out_dir(const Options& opt) {
    std::filesystem::path dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_segment(const CLI::App* cmd, const Options& opt) {
    const bool by_count = cmd->count("--n-visual") > 0;
    const bool by_threshold = cmd->count("--t-visual") > 0;
    if (by_count == by_threshold)
        throw std::invalid_argument("segment needs exactly one of --n-visual / --t-visual");

    const hseg::Raster img = hseg::load_image(opt.input);
    const hseg::PipelineConfig cfg = make_config(cmd, opt);
    const hseg::PipelineResult result = hseg::run_pipeline(img, cfg);

    hseg::LabelMap cut = by_count
        ? hseg::cut_by_count(result.merge_tree, result.graph.labels, static_cast<uint32_t>(opt.n_visual))
        : hseg::cut_by_threshold(result.merge_tree, result.graph.labels, opt.t_visual);

    const auto dir = prepare_out_dir(opt);
    const bool fits_pgm = cut.region_count() <= 65536;
    const auto label_path = dir / (fits_pgm ? "labels.pgm" : "labels.txt");
    hseg::save_label_map(cut, label_path.string());
    hseg::save_image(hseg::render_mean_colors(img, cut), (dir / "render.ppm").string());
    write_text((dir / "merge_tree.json").string(), hseg::merge_tree_to_json(result.merge_tree));

    std::cout << "k=" << result.k_used << " initial_segments=" << result.graph.segment_count()
              << " displayed_segments=" << cut.region_count() << "\n";
    return 0;
}

int cmd_boundaries(const CLI::App* cmd, const Options& opt) {
    const hseg::Raster img = hseg::load_image(opt.input);
    const hseg::PipelineConfig cfg = make_config(cmd, opt);
    hseg::DecompParams decomp = cfg.decomp;
    if (cfg.auto_k)
        decomp.model.dominant_count = hseg::find_optimization_point(img, decomp);
    const hseg::DecompositionTree tree = hseg::decompose(img, decomp);
    const hseg::RegionGraph graph = hseg::compose(tree, img, cfg.filters, cfg.edges);

    const auto dir = prepare_out_dir(opt);
    hseg::save_pgm(hseg::boundary_image(graph), graph.width, graph.height,
                   (dir / "boundaries.pgm").string());
    std::cout << "segments=" << graph.segment_count() << " boundaries=" << graph.boundaries.size() << "\n";
    return 0;
}

int cmd_tree(const CLI::App* cmd, const Options& opt) {
    const hseg::Raster img = hseg::load_image(opt.input);
    const hseg::PipelineConfig cfg = make_config(cmd, opt);
    const hseg::PipelineResult result = hseg::run_pipeline(img, cfg);

    const auto dir = prepare_out_dir(opt);
    write_text((dir / "quadtree.json").string(), hseg::quadtree_to_json(result.tree));
    write_text((dir / "merge_tree.json").string(), hseg::merge_tree_to_json(result.merge_tree));
    std::cout << "nodes=" << result.tree.nodes.size()
              << " initial_segments=" << result.graph.segment_count() << "\n";
    return 0;
}

int cmd_eval(const CLI::App* cmd, const Options& opt) {
    const hseg::Raster img = hseg::load_image(opt.input);
    const hseg::LabelMap labels = hseg::load_label_map(opt.labels_path);
    int bins = 64;
    if (cmd->count("--bins"))
        bins = opt.bins;
    const hseg::EvalReport report = hseg::evaluate(img, labels, bins);

    const std::string csv = fmt(report.q) + "," + fmt(report.h_r) + "," + fmt(report.h_l) + "," + fmt(report.e);
    nlohmann::json doc;
    doc["q"] = report.q;
    doc["h_r"] = report.h_r;
    doc["h_l"] = report.h_l;
    doc["e"] = report.e;
    doc["regions"] = report.regions;

    const auto dir = prepare_out_dir(opt);
    write_text((dir / "eval.csv").string(), csv + "\n");
    write_text((dir / "eval.json").string(), doc.dump(2));
    std::cout << csv << "\n";
    return 0;
}

int cmd_auto_k(const CLI::App* cmd, const Options& opt) {
    const hseg::Raster img = hseg::load_image(opt.input);
    const hseg::PipelineConfig cfg = make_config(cmd, opt);
    std::cout << hseg::find_optimization_point(img, cfg.decomp) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy-driven hierarchical image segmentation"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* seg = app.add_subcommand("segment", "segment an image and cut the merge hierarchy");
    seg->add_option("input", opt.input, "input image (PPM; PNG when built in)")->required();
    add_pipeline_flags(seg, opt);
    auto* nvis = seg->add_option("--n-visual", opt.n_visual, "number of displayed segments")
                     ->check(CLI::PositiveNumber);
    auto* tvis = seg->add_option("--t-visual", opt.t_visual, "confidence threshold for the cut");
    nvis->excludes(tvis);
    tvis->excludes(nvis);
    seg->add_option("--out", opt.out_dir, "output directory");

    CLI::App* bnd = app.add_subcommand("boundaries", "write the confidence-weighted boundary map");
    bnd->add_option("input", opt.input)->required();
    add_pipeline_flags(bnd, opt);
    bnd->add_option("--out", opt.out_dir, "output directory");

    CLI::App* tre = app.add_subcommand("tree", "write decomposition and merge hierarchy as JSON");
    tre->add_option("input", opt.input)->required();
    add_pipeline_flags(tre, opt);
    tre->add_option("--out", opt.out_dir, "output directory");

    CLI::App* evl = app.add_subcommand("eval", "score a segmentation against its image");
    evl->add_option("input", opt.input)->required();
    evl->add_option("--labels", opt.labels_path, "label map (PGM or label text format)")->required();
    evl->add_option("--bins", opt.bins, "luminance histogram bins");
    evl->add_option("--out", opt.out_dir, "output directory");

    CLI::App* autok = app.add_subcommand("auto-k", "print the smallest k with zero chaos leaves");
    autok->add_option("input", opt.input)->required();
    add_pipeline_flags(autok, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (seg->parsed())
            return cmd_segment(seg, opt);
        if (bnd->parsed())
            return cmd_boundaries(bnd, opt);
        if (tre->parsed())
            return cmd_tree(tre, opt);
        if (evl->parsed())
            return cmd_eval(evl, opt);
        if (autok->parsed())
            return cmd_auto_k(autok, opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
