#include "storyboard/pipeline.hpp"

#include <functional>
#include <sstream>

namespace storyboard {

namespace {

// The synthesized page before adapter injection is what name inference
// compares against, so keep both.
struct Synthesized {
    StaticLayoutTree plain;
    StaticLayoutTree filled;
};

std::optional<Synthesized> synthesize(const std::string& owner,
                                      const AppBundle& bundle,
                                      const TransitionGraph& graph,
                                      const PipelineOptions& options,
                                      Diagnostics& diag)
{
    try {
        auto plain = synthesize_static_layout(owner, bundle, graph, diag);
        auto filled = inject_adapter_views(plain, graph.adapters, options.dummy,
                                           bundle, diag);
        return Synthesized{std::move(plain), std::move(filled)};
    }
    catch (const MissingLayout& e) {
        diag.warn("missing_layout", owner, e.what());
    }
    return std::nullopt;
}

} // namespace

std::map<std::string, PageArtifact> synthesize_pages(const AppBundle& bundle,
                                                     const TransitionGraph& graph,
                                                     const PipelineOptions& options,
                                                     Diagnostics& diag)
{
    std::map<std::string, PageArtifact> pages;
    for (const auto& [owner, kind] : graph.nodes) {
        auto s = synthesize(owner, bundle, graph, options, diag);
        if (!s) {
            continue;
        }
        auto page = render_page(s->filled, options.render, &bundle.resources,
                                options.write_pgm);
        pages.emplace(owner, PageArtifact{std::move(s->filled), std::move(page)});
    }
    return pages;
}

std::map<std::string, InferenceResult> infer_page_names(
        const AppBundle& bundle, const TransitionGraph& graph,
        const std::map<std::string, PageArtifact>& pages, const Corpus& corpus,
        const InferenceOptions& options)
{
    std::map<std::string, InferenceResult> out;
    for (const auto& name : graph.activities()) {
        if (!is_obfuscated(name)) {
            continue;
        }
        auto it = pages.find(name);
        if (it == pages.end()) {
            continue;
        }
        // Strip injected adapter rows again: inference sees the page as
        // the app declares it.
        StaticLayoutTree tree = it->second.tree;
        std::function<void(ComponentNode&, const std::string&)> strip =
                [&](ComponentNode& n, const std::string& id) {
                    std::vector<ComponentNode> kept;
                    for (std::size_t i = 0; i < n.children.size(); ++i) {
                        auto cid = child_node_id(id, i);
                        if (tree.provenance_of(cid) == Provenance::adapter_dummy) {
                            continue;
                        }
                        strip(n.children[i], cid);
                        kept.push_back(std::move(n.children[i]));
                    }
                    n.children = std::move(kept);
                };
        ComponentNode root = tree.root;
        strip(root, "0");
        const auto* cls = bundle.code.find(name);
        std::string layout_name = cls && cls->layout ? *cls->layout : std::string();
        out.emplace(name, infer_semantic_name(name, extract_layout_tree(root),
                                              layout_name, corpus, options));
    }
    return out;
}

PipelineResult run_pipeline(const AppBundle& bundle, const PipelineOptions& options,
                            const Corpus* corpus)
{
    options.render.validate();
    PipelineResult r;
    r.graph = extract_transitions(bundle);
    Diagnostics diag;
    r.pages = synthesize_pages(bundle, r.graph, options, diag);
    if (corpus) {
        r.inferences = infer_page_names(bundle, r.graph, r.pages, *corpus,
                                        options.inference);
    }
    r.storyboard = assemble_storyboard(bundle, r.graph, r.pages, r.inferences,
                                       options.render);
    r.warnings = r.graph.warnings;
    r.warnings.insert(r.warnings.end(), diag.items().begin(), diag.items().end());
    r.storyboard.warnings.insert(r.storyboard.warnings.begin(),
                                 r.warnings.begin(), r.warnings.end());
    r.warnings = r.storyboard.warnings;
    return r;
}

PipelineResult build_storyboard(const AppBundle& bundle,
                                const std::filesystem::path& out_dir,
                                const PipelineOptions& options,
                                const Corpus* corpus)
{
    auto r = run_pipeline(bundle, options, corpus);
    auto& files = r.storyboard.files;
    for (const auto& [owner, art] : r.pages) {
        auto stem = sanitize_file_name(owner);
        files["synth/" + stem + ".xml"] = serialize_layout(art.tree.root);
        if (options.write_pgm && art.page.raster) {
            std::ostringstream pgm;
            write_pgm(pgm, *art.page.raster);
            files["pages/" + stem + ".pgm"] = pgm.str();
        }
    }
    std::map<std::string, std::string> inferred;
    for (const auto& [name, inf] : r.inferences) {
        inferred.emplace(name, inf.inferred_name);
    }
    files["atg.json"] = to_json(r.graph, inferred);
    emit_storyboard_bundle(r.storyboard, out_dir, options.viewer_assets);
    return r;
}

} // namespace storyboard
