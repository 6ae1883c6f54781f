#ifndef STORYBOARD_STORYBOARD_HPP
#define STORYBOARD_STORYBOARD_HPP

#include "storyboard/atg.hpp"
#include "storyboard/bundle.hpp"
#include "storyboard/naming.hpp"
#include "storyboard/render.hpp"
#include "storyboard/synthesizer.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace storyboard {

using MethodEdge = std::pair<std::string, std::string>;

/// Caller -> callee pairs for every call statement whose callee is in the
/// same class. Order follows the methods and statements; repeats are
/// dropped.
std::vector<MethodEdge> emit_method_hierarchy(const ClassModel& cls);

/// A synthesized page and its rendering.
struct PageArtifact {
    StaticLayoutTree tree;
    RenderedPage page;
};

struct FragmentPage {
    std::string class_name;
    std::string page;        // relative path of the SVG
    std::string layout_code;
};

struct ActivityCard {
    std::string class_name;
    std::string display_name;
    std::string page;        // relative path of the SVG
    bool placeholder_page = false;
    std::string layout_code;
    std::string activity_code;
    std::string code_file;   // relative path of the activity code text
    std::vector<MethodEdge> method_hierarchy;
    std::vector<FragmentPage> fragments;
    std::optional<InferenceResult> inference;
};

struct Storyboard {
    std::string app_id;
    std::vector<ActivityCard> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<Warning> warnings;
    /// Every artifact referenced by the document: relative path -> bytes.
    std::map<std::string, std::string> files;
};

/// One card per activity node, in name order. Fragment pages go into the
/// card of each host. A node without a page gets a placeholder page and a
/// `missing_page` warning.
Storyboard assemble_storyboard(const AppBundle& bundle,
                               const TransitionGraph& graph,
                               const std::map<std::string, PageArtifact>& pages,
                               const std::map<std::string, InferenceResult>& inferences,
                               const RenderSpec& spec = {});

/// The `storyboard.json` document.
std::string to_json(const Storyboard& sb);

/// Writes storyboard.json plus every referenced file under `out_dir`, and
/// copies `viewer_assets` (if given) into `out_dir/viewer`. Returns the
/// path of storyboard.json. Throws IOError.
std::filesystem::path emit_storyboard_bundle(
        const Storyboard& sb, const std::filesystem::path& out_dir,
        const std::filesystem::path& viewer_assets = {});

/// Replaces characters outside [A-Za-z0-9_.$-] with '_'.
std::string sanitize_file_name(std::string_view name);

/// Writes `content` to `path`, creating parent directories. Throws IOError.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace storyboard

#endif
