#include "storyboard/bundle.hpp"

#include "storyboard/errors.hpp"
#include "xml_dom.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace storyboard {

namespace fs = std::filesystem;

std::string_view to_string(LayoutKind kind)
{
    switch (kind) {
    case LayoutKind::static_layout: return "static";
    case LayoutKind::dynamic_layout: return "dynamic";
    case LayoutKind::hybrid_layout: return "hybrid";
    }
    return "static";
}

const LayoutDocument* AppBundle::find_layout(std::string_view name) const
{
    auto it = layouts.find(std::string(name));
    return it == layouts.end() ? nullptr : &it->second;
}

std::string simple_class_name(std::string_view name)
{
    auto pos = name.find_last_of(".$");
    return std::string(pos == std::string_view::npos ? name
                                                     : name.substr(pos + 1));
}

namespace {

constexpr std::array<std::string_view, 10> activity_bases{
        "Activity",         "AppCompatActivity", "FragmentActivity",
        "ListActivity",     "PreferenceActivity", "TabActivity",
        "ActionBarActivity", "ComponentActivity", "ExpandableListActivity",
        "AccountAuthenticatorActivity"};

constexpr std::array<std::string_view, 6> fragment_bases{
        "Fragment",           "ListFragment",
        "DialogFragment",     "PreferenceFragment",
        "PreferenceFragmentCompat", "BottomSheetDialogFragment"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& arr, std::string_view v)
{
    return std::find(arr.begin(), arr.end(), simple_class_name(v))
           != arr.end();
}

// Follows superclass links through the code model.
enum class Lineage { none, activity, fragment };

Lineage lineage_of(const ClassModel& cls,
                   const std::map<std::string, const ClassModel*>& by_name)
{
    std::set<std::string> seen;
    const ClassModel* cur = &cls;
    while (cur && cur->superclass && seen.insert(cur->name).second) {
        const auto& base = *cur->superclass;
        auto it = by_name.find(base);
        if (it == by_name.end()) {
            if (contains(activity_bases, base)) {
                return Lineage::activity;
            }
            if (contains(fragment_bases, base)) {
                return Lineage::fragment;
            }
            return Lineage::none;
        }
        cur = it->second;
        if (cur->fragment_hint) {
            return Lineage::fragment;
        }
    }
    return Lineage::none;
}

std::string normalize_activity_name(std::string_view name,
                                    const std::string& package)
{
    if (name.starts_with('.')) {
        name.remove_prefix(1);
    }
    else if (!package.empty() && name.starts_with(package + ".")) {
        name.remove_prefix(package.size() + 1);
    }
    return std::string(name);
}

std::string read_text(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw BundleError("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_value(const ValueRef& v, const CodeModel& code,
                 const std::string& where, std::set<std::string>& unresolved)
{
    if (v.kind == ValueRef::Kind::call && !code.find_method(v.callee)) {
        const auto* cls = code.find(v.callee.cls);
        if (!cls || !cls->undecompiled) {
            unresolved.insert(where + " -> " + v.callee.str());
        }
    }
}

} // namespace

AppBundle make_bundle(std::string app_id, ManifestInfo manifest,
                      std::vector<LayoutDocument> layouts,
                      ResourceTable resources, std::vector<ClassModel> classes)
{
    AppBundle b;
    b.app_id = std::move(app_id);

    if (manifest.main_activity.empty() && !manifest.declared_activities.empty()) {
        manifest.main_activity = manifest.declared_activities.front();
    }
    if (!manifest.declared_activities.empty()
        && std::find(manifest.declared_activities.begin(),
                     manifest.declared_activities.end(),
                     manifest.main_activity)
                   == manifest.declared_activities.end()) {
        throw LinkError({"main activity " + manifest.main_activity
                         + " is not declared"});
    }

    std::set<std::string> present;
    for (const auto& c : classes) {
        present.insert(c.name);
    }
    for (const auto& a : manifest.declared_activities) {
        if (!present.count(a)) {
            ClassModel placeholder;
            placeholder.name = a;
            placeholder.undecompiled = true;
            classes.push_back(std::move(placeholder));
            present.insert(a);
        }
    }

    std::set<std::string> declared(manifest.declared_activities.begin(),
                                   manifest.declared_activities.end());
    {
        std::map<std::string, const ClassModel*> by_name;
        for (const auto& c : classes) {
            by_name.emplace(c.name, &c);
        }
        std::vector<ClassKind> kinds;
        for (const auto& c : classes) {
            auto lineage = lineage_of(c, by_name);
            if (c.outer_class) {
                kinds.push_back(ClassKind::inner);
            }
            else if (declared.count(c.name) || lineage == Lineage::activity) {
                kinds.push_back(ClassKind::activity);
            }
            else if (c.fragment_hint || lineage == Lineage::fragment) {
                kinds.push_back(ClassKind::fragment);
            }
            else {
                kinds.push_back(ClassKind::plain);
            }
        }
        for (std::size_t i = 0; i < classes.size(); ++i) {
            classes[i].kind = kinds[i];
        }
    }

    for (auto& doc : layouts) {
        auto name = doc.name;
        if (!b.layouts.emplace(name, std::move(doc)).second) {
            throw BundleError("duplicate layout name " + name);
        }
    }

    b.code = CodeModel(std::move(classes));
    b.manifest = std::move(manifest);
    b.resources = std::move(resources);

    std::set<std::string> unresolved;
    auto need_class = [&](const std::string& name, const std::string& where) {
        if (!b.code.find(name)) {
            unresolved.insert(where + " -> class " + name);
        }
    };
    auto need_layout = [&](const std::string& name, const std::string& where) {
        if (!b.find_layout(name)) {
            unresolved.insert(where + " -> layout " + name);
        }
    };
    for (const auto& cls : b.code.classes()) {
        if (cls.outer_class) {
            need_class(*cls.outer_class, cls.name + " outer");
        }
        for (const auto& m : cls.methods) {
            auto where = cls.name + "." + m.name;
            for (const auto& s : m.statements) {
                if (const auto* st = std::get_if<stmt::StartActivity>(&s)) {
                    if (!st->target_is_var) {
                        need_class(st->target, where);
                    }
                }
                else if (const auto* ni = std::get_if<stmt::NewIntent>(&s)) {
                    need_class(ni->target, where);
                }
                else if (const auto* fc = std::get_if<stmt::FragmentCommit>(&s)) {
                    need_class(fc->fragment, where);
                }
                else if (const auto* sa = std::get_if<stmt::SetAdapter>(&s)) {
                    if (sa->source == stmt::SetAdapter::Source::fragment) {
                        need_class(sa->source_name, where);
                    }
                    else if (sa->source == stmt::SetAdapter::Source::layout) {
                        need_layout(sa->source_name, where);
                    }
                }
                else if (const auto* inf = std::get_if<stmt::Inflate>(&s)) {
                    need_layout(inf->layout, where);
                }
                else if (const auto* attr = std::get_if<stmt::SetAttr>(&s)) {
                    check_value(attr->value, b.code, where, unresolved);
                }
                else if (const auto* ret = std::get_if<stmt::ReturnValue>(&s)) {
                    check_value(ret->value, b.code, where, unresolved);
                }
            }
        }
    }
    try {
        b.call_graph = build_call_graph(b.code);
    }
    catch (const LinkError& e) {
        unresolved.insert(e.unresolved().begin(), e.unresolved().end());
    }
    if (!unresolved.empty()) {
        throw LinkError({unresolved.begin(), unresolved.end()});
    }
    return b;
}

ManifestInfo parse_manifest_xml(std::string_view xml, const std::string& file)
{
    auto dom = detail::parse_xml(xml, file);
    if (dom.name != "manifest") {
        throw ParseError(file, dom.line, "expected <manifest> root");
    }
    ManifestInfo info;
    if (const auto* pkg = dom.attribute("package")) {
        info.package = *pkg;
    }
    auto attr = [](const detail::XmlElement& el,
                   std::string_view key) -> const std::string* {
        for (const auto& [k, v] : el.attributes) {
            if (normalize_attribute_name(k) == key) {
                return &v;
            }
        }
        return nullptr;
    };
    std::set<std::string> seen;
    auto visit = [&](auto&& self, const detail::XmlElement& el) -> void {
        if (el.name == "activity") {
            const auto* name = attr(el, "name");
            if (!name) {
                throw ParseError(file, el.line, "<activity> without name");
            }
            auto cls = normalize_activity_name(*name, info.package);
            if (!seen.insert(cls).second) {
                throw ParseError(file, el.line,
                                 "activity " + cls + " declared twice");
            }
            info.declared_activities.push_back(cls);
            for (const auto& filter : el.children) {
                if (filter.name != "intent-filter") {
                    continue;
                }
                for (const auto& action : filter.children) {
                    const auto* a = attr(action, "name");
                    if (action.name == "action" && a
                        && *a == "android.intent.action.MAIN"
                        && info.main_activity.empty()) {
                        info.main_activity = cls;
                    }
                }
            }
        }
        for (const auto& c : el.children) {
            self(self, c);
        }
    };
    visit(visit, dom);
    if (info.main_activity.empty() && !info.declared_activities.empty()) {
        info.main_activity = info.declared_activities.front();
    }
    return info;
}

ManifestInfo parse_manifest_json(std::string_view text, const std::string& file)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw ParseError(file, 0, e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(file, 0, "manifest must be a JSON object");
    }
    ManifestInfo info;
    try {
        info.package = doc.value("package", std::string());
        for (const auto& a : doc.value("activities", json::array())) {
            info.declared_activities.push_back(
                    normalize_activity_name(a.get<std::string>(), info.package));
        }
        if (auto main = doc.value("main_activity", std::string()); !main.empty()) {
            info.main_activity = normalize_activity_name(main, info.package);
        }
    }
    catch (const json::exception& e) {
        throw ParseError(file, 0, e.what());
    }
    if (info.main_activity.empty() && !info.declared_activities.empty()) {
        info.main_activity = info.declared_activities.front();
    }
    return info;
}

AppBundle load_bundle(const fs::path& dir)
{
    if (!fs::is_directory(dir)) {
        throw BundleError("not a bundle directory: " + dir.string());
    }
    ManifestInfo manifest;
    if (auto p = dir / "manifest.xml"; fs::exists(p)) {
        manifest = parse_manifest_xml(read_text(p), p.string());
    }
    else if (auto pj = dir / "manifest.json"; fs::exists(pj)) {
        manifest = parse_manifest_json(read_text(pj), pj.string());
    }
    else {
        throw BundleError("missing manifest.xml in " + dir.string());
    }

    auto code_path = dir / "code.model.json";
    if (!fs::exists(code_path)) {
        throw BundleError("missing code.model.json in " + dir.string());
    }
    auto classes = parse_code_model(read_text(code_path), code_path.string());

    std::vector<LayoutDocument> layouts;
    if (auto layout_dir = dir / "res" / "layout"; fs::is_directory(layout_dir)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(layout_dir)) {
            if (e.is_regular_file() && e.path().extension() == ".xml") {
                files.push_back(e.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            layouts.push_back(parse_layout(read_text(f), f.string()));
        }
    }

    ResourceTable resources;
    for (const char* name : {"strings.xml", "colors.xml", "dimens.xml"}) {
        auto p = dir / "res" / "values" / name;
        if (fs::exists(p)) {
            parse_values(read_text(p), p.string(), resources);
        }
    }

    auto app_id = manifest.package.empty()
                          ? fs::absolute(dir).lexically_normal().filename().string()
                          : manifest.package;
    if (app_id.empty()) {
        app_id = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    }
    return make_bundle(std::move(app_id), std::move(manifest),
                       std::move(layouts), std::move(resources),
                       std::move(classes));
}

LayoutKind detect_layout_type(const ClassModel& cls)
{
    bool dynamic = false;
    for (const auto& m : cls.methods) {
        for (const auto& s : m.statements) {
            if (std::holds_alternative<stmt::Inflate>(s)) {
                return LayoutKind::hybrid_layout;
            }
            dynamic = dynamic || std::holds_alternative<stmt::AddView>(s)
                      || std::holds_alternative<stmt::NewComponent>(s);
        }
    }
    return dynamic ? LayoutKind::dynamic_layout : LayoutKind::static_layout;
}

LayoutKind detect_layout_type(const AppBundle& bundle)
{
    bool dynamic = false;
    for (const auto& cls : bundle.code.classes()) {
        switch (detect_layout_type(cls)) {
        case LayoutKind::hybrid_layout: return LayoutKind::hybrid_layout;
        case LayoutKind::dynamic_layout: dynamic = true; break;
        case LayoutKind::static_layout: break;
        }
    }
    return dynamic ? LayoutKind::dynamic_layout : LayoutKind::static_layout;
}

} // namespace storyboard
