// storyboard: command-line front end for the analysis pipeline.

#include <storyboard/atg.hpp>
#include <storyboard/bundle.hpp>
#include <storyboard/image.hpp>
#include <storyboard/naming.hpp>
#include <storyboard/pipeline.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <regex>
#include <sstream>

namespace fs = std::filesystem;
using namespace storyboard;

namespace {

void print_warnings(const std::vector<Warning>& warnings)
{
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w.code << ": " << w.subject << ": "
                  << w.message << '\n';
    }
}

void parse_screen(const std::string& text, RenderSpec& spec)
{
    static const std::regex re(R"((\d+)x(\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw CLI::ValidationError("--screen", "expected WxH in dp, e.g. 360x640");
    }
    spec.screen_width_dp = std::stoi(m[1]);
    spec.screen_height_dp = std::stoi(m[2]);
}

struct RenderFlags {
    std::string screen = "360x640";
    double density = 2.0;
    int dummy_rows = 5;
    bool pgm = false;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--screen", screen, "Canvas size in dp (WxH)");
        cmd->add_option("--density", density, "dp to px scale")
                ->check(CLI::PositiveNumber);
        cmd->add_option("--dummy-rows", dummy_rows,
                        "Rows placed in adapter views")
                ->check(CLI::Range(1, 1000));
        cmd->add_flag("--pgm", pgm, "Also write grayscale PGM rasters");
    }

    PipelineOptions options() const
    {
        PipelineOptions o;
        parse_screen(screen, o.render);
        o.render.density_scale = density;
        o.dummy.row_count = dummy_rows;
        o.write_pgm = pgm;
        return o;
    }
};

std::string format_number(double v)
{
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Static storyboard builder for decompiled app bundles"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "Run the full pipeline");
    std::string bundle_dir, out_dir, corpus_path, viewer_dir;
    int threshold = 5;
    RenderFlags build_flags;
    build->add_option("bundle", bundle_dir, "Bundle directory")->required()
            ->check(CLI::ExistingDirectory);
    build->add_option("-o,--out", out_dir, "Output directory")->required();
    build->add_option("--corpus", corpus_path, "Name-inference corpus (JSONL)")
            ->check(CLI::ExistingFile);
    build->add_option("--threshold", threshold, "TED threshold")
            ->check(CLI::PositiveNumber);
    build->add_option("--viewer", viewer_dir, "Viewer assets to copy")
            ->check(CLI::ExistingDirectory);
    build_flags.add_to(build);

    // extract-atg
    auto* atg = app.add_subcommand("extract-atg", "Write the transition graph");
    std::string atg_bundle, atg_out;
    atg->add_option("bundle", atg_bundle, "Bundle directory")->required()
            ->check(CLI::ExistingDirectory);
    atg->add_option("-o,--out", atg_out, "Output file (default: stdout)");

    // render
    auto* render = app.add_subcommand("render", "Synthesize and render pages");
    std::string render_bundle, render_out;
    RenderFlags render_flags;
    render->add_option("bundle", render_bundle, "Bundle directory")->required()
            ->check(CLI::ExistingDirectory);
    render->add_option("-o,--out", render_out, "Output directory")->required();
    render_flags.add_to(render);

    // infer-names
    auto* infer = app.add_subcommand("infer-names", "Infer names of obfuscated activities");
    std::string infer_bundle, infer_corpus;
    int infer_threshold = 5;
    infer->add_option("bundle", infer_bundle, "Bundle directory")->required()
            ->check(CLI::ExistingDirectory);
    infer->add_option("--corpus", infer_corpus, "Corpus (JSONL)")->required()
            ->check(CLI::ExistingFile);
    infer->add_option("--threshold", infer_threshold, "TED threshold")
            ->check(CLI::PositiveNumber);

    // eval-similarity
    auto* eval = app.add_subcommand("eval-similarity", "Compare two PGM rasters");
    std::string pgm_a, pgm_b;
    eval->add_option("a", pgm_a, "First image")->required()->check(CLI::ExistingFile);
    eval->add_option("b", pgm_b, "Second image")->required()->check(CLI::ExistingFile);

    // build-corpus
    auto* corpus_cmd = app.add_subcommand("build-corpus", "Build a name-inference corpus");
    std::vector<std::string> corpus_bundles;
    std::string corpus_out;
    corpus_cmd->add_option("bundles", corpus_bundles, "Bundle directories")
            ->required()->check(CLI::ExistingDirectory);
    corpus_cmd->add_option("-o,--out", corpus_out, "Corpus file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            auto bundle = load_bundle(bundle_dir);
            auto options = build_flags.options();
            options.inference.threshold = threshold;
            options.viewer_assets = viewer_dir;
            std::optional<Corpus> corpus;
            if (!corpus_path.empty()) {
                corpus = load_corpus(corpus_path);
            }
            auto r = build_storyboard(bundle, out_dir, options,
                                      corpus ? &*corpus : nullptr);
            print_warnings(r.warnings);
            std::cout << "wrote " << (fs::path(out_dir) / "storyboard.json").string()
                      << " (" << r.storyboard.nodes.size() << " activities, "
                      << r.storyboard.edges.size() << " transitions)\n";
        }
        else if (*atg) {
            auto bundle = load_bundle(atg_bundle);
            auto graph = extract_transitions(bundle);
            print_warnings(graph.warnings);
            auto json = to_json(graph);
            if (atg_out.empty()) {
                std::cout << json;
            }
            else {
                write_file(atg_out, json);
            }
        }
        else if (*render) {
            auto bundle = load_bundle(render_bundle);
            auto options = render_flags.options();
            auto graph = extract_transitions(bundle);
            Diagnostics diag;
            auto pages = synthesize_pages(bundle, graph, options, diag);
            print_warnings(graph.warnings);
            print_warnings(diag.items());
            for (const auto& [owner, art] : pages) {
                auto stem = sanitize_file_name(owner);
                fs::path out(render_out);
                write_file(out / "pages" / (stem + ".svg"), art.page.svg);
                write_file(out / "synth" / (stem + ".xml"),
                           serialize_layout(art.tree.root));
                if (art.page.raster) {
                    write_pgm(out / "pages" / (stem + ".pgm"), *art.page.raster);
                }
            }
            std::cout << "rendered " << pages.size() << " pages\n";
        }
        else if (*infer) {
            auto bundle = load_bundle(infer_bundle);
            auto corpus = load_corpus(infer_corpus);
            PipelineOptions options;
            options.inference.threshold = infer_threshold;
            auto graph = extract_transitions(bundle);
            Diagnostics diag;
            auto pages = synthesize_pages(bundle, graph, options, diag);
            auto results = infer_page_names(bundle, graph, pages, corpus,
                                            options.inference);
            nlohmann::ordered_json out = nlohmann::ordered_json::array();
            for (const auto& [name, r] : results) {
                nlohmann::ordered_json j;
                j["original_name"] = r.original_name;
                j["inferred_name"] = r.inferred_name;
                j["matched_by"] = to_string(r.matched_by);
                auto cands = nlohmann::ordered_json::array();
                for (const auto& c : r.candidates) {
                    cands.push_back({{"name", c.name}, {"ted", c.ted},
                                     {"frequency", c.frequency}});
                }
                j["candidates"] = std::move(cands);
                out.push_back(std::move(j));
            }
            std::cout << out.dump(2) << '\n';
        }
        else if (*eval) {
            auto s = image_similarity(read_pgm(pgm_a), read_pgm(pgm_b));
            std::cout << "mae=" << format_number(s.mae)
                      << " mse=" << format_number(s.mse)
                      << " similarity=" << format_number(s.similarity_pct) << "%\n";
        }
        else if (*corpus_cmd) {
            std::vector<AppBundle> bundles;
            for (const auto& dir : corpus_bundles) {
                bundles.push_back(load_bundle(dir));
            }
            auto corpus = build_corpus(bundles, corpus_out);
            std::cout << "wrote " << corpus.size() << " entries to " << corpus_out
                      << '\n';
        }
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
