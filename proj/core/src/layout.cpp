#include "storyboard/layout.hpp"

#include "storyboard/errors.hpp"
#include "xml_dom.hpp"

#include <algorithm>
#include <array>
#include <filesystem>

namespace storyboard {

AttributeSet::AttributeSet(std::initializer_list<value_type> init)
{
    for (const auto& [k, v] : init) {
        set(k, v);
    }
}

void AttributeSet::set(std::string name, std::string value)
{
    for (auto& item : items_) {
        if (item.first == name) {
            item.second = std::move(value);
            return;
        }
    }
    items_.emplace_back(std::move(name), std::move(value));
}

bool AttributeSet::insert(std::string name, std::string value)
{
    if (contains(name)) {
        return false;
    }
    items_.emplace_back(std::move(name), std::move(value));
    return true;
}

bool AttributeSet::erase(std::string_view name)
{
    auto it = std::find_if(items_.begin(), items_.end(),
                           [&](const auto& kv) { return kv.first == name; });
    if (it == items_.end()) {
        return false;
    }
    items_.erase(it);
    return true;
}

const std::string* AttributeSet::find(std::string_view name) const
{
    for (const auto& item : items_) {
        if (item.first == name) {
            return &item.second;
        }
    }
    return nullptr;
}

std::string AttributeSet::get_or(std::string_view name,
                                 std::string fallback) const
{
    const auto* v = find(name);
    return v ? *v : std::move(fallback);
}

bool operator==(const AttributeSet& a, const AttributeSet& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    return std::all_of(a.begin(), a.end(), [&](const auto& kv) {
        const auto* other = b.find(kv.first);
        return other && *other == kv.second;
    });
}

std::optional<std::string> ComponentNode::id() const
{
    const auto* raw = attributes.find("id");
    if (!raw) {
        return std::nullopt;
    }
    std::string_view v = *raw;
    for (std::string_view prefix : {"@+id/", "@id/"}) {
        if (v.starts_with(prefix)) {
            return std::string(v.substr(prefix.size()));
        }
    }
    return std::string(v);
}

std::size_t ComponentNode::subtree_size() const
{
    std::size_t n = 1;
    for (const auto& c : children) {
        n += c.subtree_size();
    }
    return n;
}

std::string_view simple_tag(std::string_view tag)
{
    auto pos = tag.rfind('.');
    return pos == std::string_view::npos ? tag : tag.substr(pos + 1);
}

bool is_leaf_widget(std::string_view tag)
{
    static constexpr std::array<std::string_view, 18> leaves{
            "TextView",  "EditText",    "Button",       "ImageView",
            "ImageButton", "CheckBox",  "RadioButton",  "Switch",
            "ToggleButton", "ProgressBar", "SeekBar",   "RatingBar",
            "Spinner",   "View",        "Space",        "CheckedTextView",
            "AutoCompleteTextView",     "MultiAutoCompleteTextView"};
    auto simple = simple_tag(tag);
    return std::find(leaves.begin(), leaves.end(), simple) != leaves.end();
}

std::string_view normalize_attribute_name(std::string_view name)
{
    constexpr std::string_view prefix = "android:";
    if (name.starts_with(prefix)) {
        name.remove_prefix(prefix.size());
    }
    return name;
}

namespace {

ComponentNode to_component(const detail::XmlElement& el,
                           const std::string& file)
{
    ComponentNode node;
    node.tag = el.name;
    for (const auto& [k, v] : el.attributes) {
        if (k == "xmlns" || k.starts_with("xmlns:")) {
            continue;
        }
        std::string name(normalize_attribute_name(k));
        if (!node.attributes.insert(name, v)) {
            throw ParseError(file, el.line,
                             "duplicate attribute '" + name + "' on <"
                                     + el.name + ">");
        }
    }
    if (is_leaf_widget(node.tag) && !el.children.empty()) {
        throw ParseError(file, el.line,
                         "leaf widget <" + el.name + "> cannot have children");
    }
    node.children.reserve(el.children.size());
    for (const auto& c : el.children) {
        node.children.push_back(to_component(c, file));
    }
    return node;
}

void write_node(std::string& out, const ComponentNode& node, int depth,
                bool is_root)
{
    std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
    out += indent + "<" + node.tag;
    if (is_root) {
        out += " xmlns:android=\"http://schemas.android.com/apk/res/android\"";
    }
    for (const auto& [k, v] : node.attributes) {
        out += "\n" + indent + "    ";
        if (k.find(':') == std::string::npos) {
            out += "android:";
        }
        out += k + "=\"" + detail::escape_xml(v) + "\"";
    }
    if (node.children.empty()) {
        out += " />\n";
        return;
    }
    out += ">\n";
    for (const auto& c : node.children) {
        write_node(out, c, depth + 1, false);
    }
    out += indent + "</" + node.tag + ">\n";
}

} // namespace

LayoutDocument parse_layout(std::string_view xml, const std::string& file,
                            std::string name)
{
    auto dom = detail::parse_xml(xml, file);
    if (is_leaf_widget(dom.name)) {
        throw ParseError(file, dom.line,
                         "layout root <" + dom.name + "> is not a ViewGroup");
    }
    if (name.empty()) {
        name = std::filesystem::path(file).stem().string();
    }
    return LayoutDocument{std::move(name), to_component(dom, file)};
}

std::string serialize_layout(const ComponentNode& root)
{
    std::string out = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
    write_node(out, root, 0, true);
    return out;
}

} // namespace storyboard
