#ifndef STORYBOARD_BUNDLE_HPP
#define STORYBOARD_BUNDLE_HPP

#include "storyboard/call_graph.hpp"
#include "storyboard/code_model.hpp"
#include "storyboard/layout.hpp"
#include "storyboard/resources.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace storyboard {

struct ManifestInfo {
    std::string package;
    std::vector<std::string> declared_activities;
    std::string main_activity;

    friend bool operator==(const ManifestInfo&, const ManifestInfo&) = default;
};

enum class LayoutKind { static_layout, dynamic_layout, hybrid_layout };

std::string_view to_string(LayoutKind kind);

/// Everything the analyses need to know about one decompiled app. Treat as
/// immutable once built.
struct AppBundle {
    std::string app_id;
    ManifestInfo manifest;
    std::map<std::string, LayoutDocument> layouts;
    ResourceTable resources;
    CodeModel code;
    CallGraph call_graph;

    const LayoutDocument* find_layout(std::string_view name) const;

    friend bool operator==(const AppBundle&, const AppBundle&) = default;
};

/// Links the parts of a bundle: derives class kinds, adds undecompiled
/// placeholders for declared activities missing from the code model,
/// validates cross references and builds the call graph.
/// Throws LinkError listing every dangling reference.
AppBundle make_bundle(std::string app_id, ManifestInfo manifest,
                      std::vector<LayoutDocument> layouts,
                      ResourceTable resources, std::vector<ClassModel> classes);

/// Reads a bundle directory:
///   manifest.xml | manifest.json
///   code.model.json
///   res/layout/*.xml
///   res/values/{strings,colors,dimens}.xml (optional)
/// Throws BundleError, ParseError or LinkError.
AppBundle load_bundle(const std::filesystem::path& dir);

ManifestInfo parse_manifest_xml(std::string_view xml, const std::string& file);
ManifestInfo parse_manifest_json(std::string_view json,
                                 const std::string& file);

/// Classifies by the layout APIs a class uses: any inflate makes it hybrid,
/// otherwise any add_view/new_component makes it dynamic.
LayoutKind detect_layout_type(const ClassModel& cls);
/// Same rule over every decompiled class of the app.
LayoutKind detect_layout_type(const AppBundle& bundle);

/// Class name without package or outer-class qualifiers.
std::string simple_class_name(std::string_view name);

} // namespace storyboard

#endif
