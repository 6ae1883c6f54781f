#ifndef STORYBOARD_PIPELINE_HPP
#define STORYBOARD_PIPELINE_HPP

#include "storyboard/atg.hpp"
#include "storyboard/bundle.hpp"
#include "storyboard/naming.hpp"
#include "storyboard/render.hpp"
#include "storyboard/storyboard.hpp"
#include "storyboard/synthesizer.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace storyboard {

struct PipelineOptions {
    RenderSpec render;
    DummyDataSpec dummy;
    InferenceOptions inference;
    /// Also rasterize each page and write pages/<owner>.pgm.
    bool write_pgm = false;
    /// Copied to <out>/viewer when set.
    std::filesystem::path viewer_assets;
};

struct PipelineResult {
    TransitionGraph graph;
    std::map<std::string, PageArtifact> pages;
    std::map<std::string, InferenceResult> inferences;
    Storyboard storyboard;
    /// Warnings from every stage, in stage order.
    std::vector<Warning> warnings;
};

/// Synthesizes and renders a page for every activity and fragment node.
/// Nodes whose layout is missing are skipped with a `missing_layout`
/// warning.
std::map<std::string, PageArtifact> synthesize_pages(const AppBundle& bundle,
                                                     const TransitionGraph& graph,
                                                     const PipelineOptions& options,
                                                     Diagnostics& diag);

/// Infers names for every activity page. The target tree is the
/// synthesized page before adapter rows are injected.
std::map<std::string, InferenceResult> infer_page_names(
        const AppBundle& bundle, const TransitionGraph& graph,
        const std::map<std::string, PageArtifact>& pages, const Corpus& corpus,
        const InferenceOptions& options);

/// All stages in memory. `corpus` may be null, in which case names are
/// left as they are.
PipelineResult run_pipeline(const AppBundle& bundle, const PipelineOptions& options,
                            const Corpus* corpus);

/// run_pipeline plus output: storyboard bundle, atg.json and synth/*.xml.
PipelineResult build_storyboard(const AppBundle& bundle,
                                const std::filesystem::path& out_dir,
                                const PipelineOptions& options,
                                const Corpus* corpus);

} // namespace storyboard

#endif
