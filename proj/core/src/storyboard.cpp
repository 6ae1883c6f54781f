#include "storyboard/storyboard.hpp"

#include "xml_dom.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace storyboard {

std::vector<MethodEdge> emit_method_hierarchy(const ClassModel& cls)
{
    std::vector<MethodEdge> out;
    std::set<MethodEdge> seen;
    for (const auto& m : cls.methods) {
        for (const auto& s : m.statements) {
            const auto* call = std::get_if<stmt::Call>(&s);
            if (!call || call->callee.cls != cls.name) {
                continue;
            }
            MethodEdge e{m.name, call->callee.method};
            if (seen.insert(e).second) {
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

std::string sanitize_file_name(std::string_view name)
{
    std::string out(name);
    for (auto& c : out) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.'
            && c != '$' && c != '-') {
            c = '_';
        }
    }
    if (out.empty() || out == "." || out == "..") {
        out = "_" + out;
    }
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IOError("cannot create " + path.parent_path().string() + ": "
                          + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IOError("cannot write " + path.string());
    }
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) {
        throw IOError("write failed: " + path.string());
    }
}

namespace {

std::string placeholder_svg(const RenderSpec& spec, const std::string& owner)
{
    int w = spec.width_px(), h = spec.height_px();
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
        << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#E0E0E0\" stroke=\"#9E9E9E\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << w / 2 << "\" y=\"" << h / 2
        << "\" font-family=\"monospace\" font-size=\""
        << spec.dp_to_px(spec.font_size_default_dp)
        << "\" text-anchor=\"middle\" fill=\"#000000\">no page: "
        << detail::escape_xml(owner) << "</text>\n"
        << "</svg>\n";
    return svg.str();
}

std::string class_code(const AppBundle& bundle, const ClassModel& cls)
{
    std::string text = cls.source ? *cls.source : render_class_listing(cls);
    for (const auto& other : bundle.code.classes()) {
        if (other.outer_class == cls.name) {
            text += "\n" + (other.source ? *other.source
                                         : render_class_listing(other));
        }
    }
    return text;
}

// Relative file names, unique per owner.
class PathAllocator {
public:
    std::string stem(const std::string& owner)
    {
        auto it = stems_.find(owner);
        if (it != stems_.end()) {
            return it->second;
        }
        auto base = sanitize_file_name(owner);
        auto name = base;
        for (int i = 2; used_.count(name); ++i) {
            name = base + "_" + std::to_string(i);
        }
        used_.insert(name);
        stems_.emplace(owner, name);
        return name;
    }

private:
    std::map<std::string, std::string> stems_;
    std::set<std::string> used_;
};

} // namespace

Storyboard assemble_storyboard(const AppBundle& bundle,
                               const TransitionGraph& graph,
                               const std::map<std::string, PageArtifact>& pages,
                               const std::map<std::string, InferenceResult>& inferences,
                               const RenderSpec& spec)
{
    Storyboard sb;
    sb.app_id = graph.app_id.empty() ? bundle.app_id : graph.app_id;
    PathAllocator paths;

    auto page_for = [&](const std::string& owner, bool* placeholder,
                        std::string* layout_code) {
        auto path = "pages/" + paths.stem(owner) + ".svg";
        auto it = pages.find(owner);
        if (it == pages.end()) {
            sb.warnings.push_back({"missing_page", owner,
                                   "no page was synthesized for " + owner
                                           + "; using a placeholder"});
            sb.files[path] = placeholder_svg(spec, owner);
            *placeholder = true;
            *layout_code = {};
        }
        else {
            sb.files[path] = it->second.page.svg;
            *placeholder = false;
            *layout_code = serialize_layout(it->second.tree.root);
        }
        return path;
    };

    for (const auto& name : graph.activities()) {
        ActivityCard card;
        card.class_name = name;
        card.display_name = name;
        if (auto it = inferences.find(name); it != inferences.end()) {
            card.inference = it->second;
            card.display_name = it->second.inferred_name;
        }
        card.page = page_for(name, &card.placeholder_page, &card.layout_code);
        if (const auto* cls = bundle.code.find(name)) {
            card.activity_code = class_code(bundle, *cls);
            card.method_hierarchy = emit_method_hierarchy(*cls);
        }
        card.code_file = "code/" + paths.stem(name) + ".txt";
        sb.files[card.code_file] = card.activity_code;
        for (const auto& frag : graph.fragments_of(name)) {
            FragmentPage fp;
            fp.class_name = frag;
            bool placeholder = false;
            fp.page = page_for(frag, &placeholder, &fp.layout_code);
            card.fragments.push_back(std::move(fp));
        }
        sb.nodes.push_back(std::move(card));
    }

    std::set<std::string> cards;
    for (const auto& c : sb.nodes) {
        cards.insert(c.class_name);
    }
    for (const auto& e : graph.edges()) {
        if (cards.count(e.source) && cards.count(e.target)) {
            sb.edges.emplace_back(e.source, e.target);
        }
        else {
            sb.warnings.push_back({"dangling_edge", e.source,
                                   e.source + " -> " + e.target
                                           + " has an endpoint without a card"});
        }
    }
    return sb;
}

std::string to_json(const Storyboard& sb)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["app_id"] = sb.app_id;
    auto nodes = ordered_json::array();
    for (const auto& c : sb.nodes) {
        ordered_json n;
        n["class_name"] = c.class_name;
        n["display_name"] = c.display_name;
        n["page"] = c.page;
        n["placeholder_page"] = c.placeholder_page;
        n["layout_code"] = c.layout_code;
        n["activity_code"] = c.activity_code;
        n["code_file"] = c.code_file;
        auto mh = ordered_json::array();
        for (const auto& [caller, callee] : c.method_hierarchy) {
            mh.push_back(ordered_json::array({caller, callee}));
        }
        n["method_hierarchy"] = std::move(mh);
        auto frags = ordered_json::array();
        for (const auto& f : c.fragments) {
            frags.push_back(ordered_json{{"class_name", f.class_name},
                                         {"page", f.page},
                                         {"layout_code", f.layout_code}});
        }
        n["fragments"] = std::move(frags);
        if (c.inference) {
            ordered_json inf;
            inf["original_name"] = c.inference->original_name;
            inf["inferred_name"] = c.inference->inferred_name;
            inf["matched_by"] = to_string(c.inference->matched_by);
            auto cands = ordered_json::array();
            for (const auto& cand : c.inference->candidates) {
                cands.push_back(ordered_json{{"name", cand.name},
                                             {"ted", cand.ted},
                                             {"frequency", cand.frequency}});
            }
            inf["candidates"] = std::move(cands);
            n["inference"] = std::move(inf);
        }
        else {
            n["inference"] = nullptr;
        }
        nodes.push_back(std::move(n));
    }
    doc["nodes"] = std::move(nodes);
    auto edges = ordered_json::array();
    for (const auto& [s, t] : sb.edges) {
        edges.push_back(ordered_json::array({s, t}));
    }
    doc["edges"] = std::move(edges);
    auto warnings = ordered_json::array();
    for (const auto& w : sb.warnings) {
        warnings.push_back(ordered_json{{"code", w.code},
                                        {"subject", w.subject},
                                        {"message", w.message}});
    }
    doc["warnings"] = std::move(warnings);
    return doc.dump(2) + "\n";
}

std::filesystem::path emit_storyboard_bundle(const Storyboard& sb,
                                             const std::filesystem::path& out_dir,
                                             const std::filesystem::path& viewer_assets)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw IOError("cannot create output directory " + out_dir.string()
                      + (ec ? ": " + ec.message() : std::string()));
    }
    for (const auto& [rel, content] : sb.files) {
        write_file(out_dir / rel, content);
    }
    auto json_path = out_dir / "storyboard.json";
    write_file(json_path, to_json(sb));
    if (!viewer_assets.empty()) {
        fs::copy(viewer_assets, out_dir / "viewer",
                 fs::copy_options::recursive | fs::copy_options::overwrite_existing,
                 ec);
        if (ec) {
            throw IOError("cannot copy viewer assets from "
                          + viewer_assets.string() + ": " + ec.message());
        }
    }
    return json_path;
}

} // namespace storyboard
