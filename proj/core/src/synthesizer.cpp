#include "storyboard/synthesizer.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

namespace storyboard {

std::string_view to_string(Provenance p)
{
    switch (p) {
    case Provenance::static_node: return "static";
    case Provenance::converted_dynamic: return "converted_dynamic";
    case Provenance::adapter_dummy: return "adapter_dummy";
    }
    return "static";
}

std::string child_node_id(const std::string& parent, std::size_t index)
{
    return parent + "." + std::to_string(index);
}

Provenance StaticLayoutTree::provenance_of(const std::string& node_id) const
{
    auto it = provenance.find(node_id);
    return it == provenance.end() ? Provenance::static_node : it->second;
}

std::size_t StaticLayoutTree::count(Provenance p) const
{
    if (p == Provenance::static_node) {
        return root.subtree_size() - provenance.size();
    }
    return static_cast<std::size_t>(
            std::count_if(provenance.begin(), provenance.end(),
                          [p](const auto& kv) { return kv.second == p; }));
}

ComponentNode synthetic_root()
{
    return ComponentNode{"LinearLayout",
                         {{"orientation", "vertical"},
                          {"layout_width", "match_parent"},
                          {"layout_height", "match_parent"}},
                         {}};
}

std::string resolve_attribute(const ValueRef& value, const AppBundle& bundle,
                              int max_call_depth)
{
    ValueRef cur = value;
    for (int hops = 0;; ++hops) {
        switch (cur.kind) {
        case ValueRef::Kind::literal: return cur.text;
        case ValueRef::Kind::resource: return bundle.resources.resolve(cur.text);
        case ValueRef::Kind::call: break;
        }
        if (hops >= max_call_depth) {
            throw UnresolvedAttribute("call chain from " + value.callee.str()
                                      + " exceeds "
                                      + std::to_string(max_call_depth)
                                      + " hops");
        }
        const auto* m = bundle.code.find_method(cur.callee);
        if (!m) {
            throw UnresolvedAttribute("no body for " + cur.callee.str());
        }
        auto it = std::find_if(m->statements.begin(), m->statements.end(),
                               [](const Statement& s) {
                                   return std::holds_alternative<stmt::ReturnValue>(s);
                               });
        if (it == m->statements.end()) {
            throw UnresolvedAttribute(cur.callee.str()
                                      + " does not return a value");
        }
        cur = std::get<stmt::ReturnValue>(*it).value;
    }
}

namespace {

bool is_static_ref(const std::string& ref)
{
    return ref == "root" || ref.starts_with("@id/");
}

struct ViewObject {
    ComponentNode node;
    std::vector<std::size_t> children; // dynamically added, in order
    std::optional<std::size_t> parent;
    bool placed = false;
};

struct Placement {
    std::string parent; // root or @id/...
    std::size_t object;
    bool graft; // inflate-into: the inflated root's children are added
};

struct StaticEdit {
    std::string target;
    std::string attr;
    std::string value;
};

struct ViewFlow {
    std::vector<ViewObject> objects;
    std::vector<Placement> placements;
    std::vector<StaticEdit> edits;
};

ViewFlow analyze_view_flow(const MethodModel& method, const AppBundle& bundle,
                           Diagnostics& diag, const std::string& owner)
{
    ViewFlow flow;
    std::map<std::string, std::size_t> vars;
    auto where = [&](std::size_t i) {
        return (owner.empty() ? method.name : owner + "." + method.name)
               + " statement " + std::to_string(i);
    };
    auto lookup = [&](const std::string& var) -> std::optional<std::size_t> {
        auto it = vars.find(var);
        if (it == vars.end()) {
            return std::nullopt;
        }
        return it->second;
    };

    for (std::size_t i = 0; i < method.statements.size(); ++i) {
        const auto& s = method.statements[i];
        if (const auto* nc = std::get_if<stmt::NewComponent>(&s)) {
            flow.objects.push_back({ComponentNode{nc->tag, {}, {}}, {}, {}, false});
            vars[nc->var] = flow.objects.size() - 1;
        }
        else if (const auto* inf = std::get_if<stmt::Inflate>(&s)) {
            const auto* doc = bundle.find_layout(inf->layout);
            if (!doc) {
                diag.warn("missing_layout", owner,
                          where(i) + ": inflated layout " + inf->layout
                                  + " does not exist");
                continue;
            }
            flow.objects.push_back({doc->root, {}, {}, false});
            auto idx = flow.objects.size() - 1;
            if (!inf->var.empty()) {
                vars[inf->var] = idx;
            }
            if (inf->into) {
                if (is_static_ref(*inf->into)) {
                    flow.objects[idx].placed = true;
                    flow.placements.push_back({*inf->into, idx, true});
                }
                else if (auto p = lookup(*inf->into)) {
                    // Inflating into a code-built view: graft under it.
                    for (auto& c : flow.objects[idx].node.children) {
                        flow.objects[*p].node.children.push_back(std::move(c));
                    }
                    flow.objects[idx].node.children.clear();
                    flow.objects[idx].placed = true;
                }
                else {
                    diag.warn("undefined_view_var", owner,
                              where(i) + ": inflate target '" + *inf->into
                                      + "' is not defined");
                }
            }
        }
        else if (const auto* sa = std::get_if<stmt::SetAttr>(&s)) {
            std::string value;
            try {
                value = resolve_attribute(sa->value, bundle);
            }
            catch (const UnresolvedAttribute& e) {
                diag.warn("unresolved_attribute", owner,
                          where(i) + ": " + sa->attr + ": " + e.what()
                                  + "; using an empty placeholder");
            }
            std::string attr(normalize_attribute_name(sa->attr));
            if (is_static_ref(sa->var)) {
                flow.edits.push_back({sa->var, attr, value});
            }
            else if (auto obj = lookup(sa->var)) {
                flow.objects[*obj].node.attributes.set(attr, value);
            }
            else {
                diag.warn("undefined_view_var", owner,
                          where(i) + ": set_attr on undefined variable '"
                                  + sa->var + "'");
            }
        }
        else if (const auto* av = std::get_if<stmt::AddView>(&s)) {
            auto child = lookup(av->child);
            if (!child) {
                diag.warn("undefined_view_var", owner,
                          where(i) + ": add_view of undefined variable '"
                                  + av->child + "'; skipped");
                continue;
            }
            auto& obj = flow.objects[*child];
            if (obj.placed) {
                diag.warn("view_added_twice", owner,
                          where(i) + ": '" + av->child
                                  + "' already has a parent; skipped");
                continue;
            }
            if (is_static_ref(av->parent)) {
                obj.placed = true;
                flow.placements.push_back({av->parent, *child, false});
                continue;
            }
            auto parent = lookup(av->parent);
            if (!parent) {
                diag.warn("undefined_view_var", owner,
                          where(i) + ": add_view into undefined variable '"
                                  + av->parent + "'; skipped");
                continue;
            }
            // Reject cycles: the child must not be an ancestor of the parent.
            bool cycle = false;
            for (std::optional<std::size_t> p = parent; p; p = flow.objects[*p].parent) {
                if (*p == *child) {
                    cycle = true;
                    break;
                }
            }
            if (cycle) {
                diag.warn("view_cycle", owner,
                          where(i) + ": adding '" + av->child + "' to '"
                                  + av->parent + "' creates a cycle; skipped");
                continue;
            }
            if (is_leaf_widget(flow.objects[*parent].node.tag)) {
                diag.warn("leaf_parent", owner,
                          where(i) + ": '" + av->parent + "' is a "
                                  + flow.objects[*parent].node.tag
                                  + " and cannot hold children; skipped");
                continue;
            }
            obj.placed = true;
            obj.parent = *parent;
            flow.objects[*parent].children.push_back(*child);
        }
    }
    return flow;
}

ComponentNode materialize(const ViewFlow& flow, std::size_t idx)
{
    const auto& obj = flow.objects[idx];
    ComponentNode node = obj.node;
    for (auto c : obj.children) {
        node.children.push_back(materialize(flow, c));
    }
    return node;
}

std::vector<DynamicComponent> placements_of(const ViewFlow& flow)
{
    std::vector<DynamicComponent> out;
    for (const auto& p : flow.placements) {
        auto node = materialize(flow, p.object);
        if (p.graft) {
            for (auto& c : node.children) {
                out.push_back({std::move(c), p.parent});
            }
        }
        else {
            out.push_back({std::move(node), p.parent});
        }
    }
    return out;
}

// Preorder search for a node with the given id; returns its node id.
std::optional<std::string> find_by_id(const ComponentNode& node,
                                      const std::string& node_id,
                                      std::string_view wanted)
{
    if (auto id = node.id(); id && *id == wanted) {
        return node_id;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (auto hit = find_by_id(node.children[i],
                                  child_node_id(node_id, i), wanted)) {
            return hit;
        }
    }
    return std::nullopt;
}

ComponentNode* node_at(ComponentNode& root, const std::string& node_id)
{
    ComponentNode* cur = &root;
    std::size_t pos = node_id.find('.');
    while (pos != std::string::npos) {
        auto next = node_id.find('.', pos + 1);
        auto idx = std::stoul(node_id.substr(pos + 1, next - pos - 1));
        if (idx >= cur->children.size()) {
            return nullptr;
        }
        cur = &cur->children[idx];
        pos = next;
    }
    return cur;
}

void mark_subtree(StaticLayoutTree& tree, const ComponentNode& node,
                  const std::string& node_id, Provenance p)
{
    tree.provenance[node_id] = p;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        mark_subtree(tree, node.children[i], child_node_id(node_id, i), p);
    }
}

std::optional<std::string> resolve_static_ref(const ComponentNode& root,
                                              const std::string& ref)
{
    if (ref == "root") {
        return std::string("0");
    }
    return find_by_id(root, "0", std::string_view(ref).substr(4));
}

// Appends `node` under the node at `parent_id`, recording provenance.
void append_child(StaticLayoutTree& tree, const std::string& parent_id,
                  ComponentNode node, Provenance p)
{
    auto* parent = node_at(tree.root, parent_id);
    auto id = child_node_id(parent_id, parent->children.size());
    parent->children.push_back(std::move(node));
    mark_subtree(tree, parent->children.back(), id, p);
}

const MethodModel* lifecycle_method(const ClassModel& cls)
{
    if (cls.kind == ClassKind::fragment) {
        if (const auto* m = cls.find_method("onCreateView")) {
            return m;
        }
    }
    return cls.find_method("onCreate");
}

bool is_text_bearing(std::string_view tag)
{
    static constexpr std::array<std::string_view, 9> tags{
            "TextView", "Button",   "EditText",       "CheckBox",
            "RadioButton", "Switch", "ToggleButton", "CheckedTextView",
            "AutoCompleteTextView"};
    return std::find(tags.begin(), tags.end(), simple_tag(tag)) != tags.end();
}

void fill_dummy(ComponentNode& node, const std::string& text)
{
    auto tag = simple_tag(node.tag);
    if (is_text_bearing(tag)) {
        node.attributes.set("text", text);
    }
    else if (tag == "ImageView" || tag == "ImageButton") {
        node.attributes.set("src", "@dummy/image");
    }
    for (auto& c : node.children) {
        fill_dummy(c, text);
    }
}

void collect_by_tag(const ComponentNode& node, const std::string& node_id,
                    std::string_view tag, std::vector<std::string>& out)
{
    if (simple_tag(node.tag) == tag) {
        out.push_back(node_id);
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        collect_by_tag(node.children[i], child_node_id(node_id, i), tag, out);
    }
}

} // namespace

std::vector<DynamicComponent> resolve_dynamic_components(
        const MethodModel& method, const AppBundle& bundle, Diagnostics& diag,
        const std::string& owner)
{
    return placements_of(analyze_view_flow(method, bundle, diag, owner));
}

StaticLayoutTree synthesize_static_layout(const std::string& owner,
                                          const AppBundle& bundle,
                                          const TransitionGraph& graph,
                                          Diagnostics& diag)
{
    const auto* cls = bundle.code.find(owner);
    if (!cls || !graph.nodes.count(owner)) {
        throw Error(owner + " is not an activity or fragment of the graph");
    }
    StaticLayoutTree tree;
    tree.owner = owner;

    const LayoutDocument* doc = nullptr;
    if (cls->layout) {
        doc = bundle.find_layout(*cls->layout);
        if (!doc) {
            throw MissingLayout(owner + " uses layout " + *cls->layout
                                + ", which is not in the bundle");
        }
    }
    if (cls->undecompiled) {
        diag.warn("undecompiled", owner,
                  owner + " could not be decompiled; rendering a blank page");
        tree.root = doc ? doc->root : synthetic_root();
        tree.empty_page = !doc;
        return tree;
    }

    auto kind_it = graph.layout_kind.find(owner);
    auto kind = kind_it == graph.layout_kind.end() ? detect_layout_type(*cls)
                                                   : kind_it->second;
    if (kind == LayoutKind::static_layout) {
        if (!doc) {
            throw MissingLayout(owner + " has a static layout but no layout "
                                        "file");
        }
        tree.root = doc->root;
        return tree;
    }

    tree.root = doc ? doc->root : synthetic_root();
    const auto* method = lifecycle_method(*cls);
    if (!method) {
        diag.warn("empty_page", owner,
                  owner + " builds its views in code but has no onCreate");
        tree.empty_page = !doc;
        return tree;
    }

    auto flow = analyze_view_flow(*method, bundle, diag, owner);
    for (auto& comp : placements_of(flow)) {
        auto parent = resolve_static_ref(tree.root, comp.parent);
        if (!parent) {
            diag.warn("missing_parent_view", owner,
                      owner + ": no view with " + comp.parent
                              + "; component " + comp.node.tag + " skipped");
            continue;
        }
        auto* p = node_at(tree.root, *parent);
        if (is_leaf_widget(p->tag)) {
            diag.warn("leaf_parent", owner,
                      owner + ": " + comp.parent + " is a " + p->tag
                              + " and cannot hold children");
            continue;
        }
        append_child(tree, *parent, std::move(comp.node),
                     Provenance::converted_dynamic);
    }
    for (const auto& edit : flow.edits) {
        auto target = resolve_static_ref(tree.root, edit.target);
        if (!target) {
            diag.warn("missing_parent_view", owner,
                      owner + ": no view with " + edit.target + " for "
                              + edit.attr);
            continue;
        }
        node_at(tree.root, *target)->attributes.set(edit.attr, edit.value);
    }
    return tree;
}

StaticLayoutTree inject_adapter_views(StaticLayoutTree tree,
                                      const std::vector<AdapterBinding>& adapters,
                                      const DummyDataSpec& spec,
                                      const AppBundle& bundle,
                                      Diagnostics& diag)
{
    if (spec.row_count < 1) {
        throw Error("dummy row count must be at least 1");
    }
    std::map<std::string, std::size_t> used; // view type -> bindings so far
    for (const auto& b : adapters) {
        if (b.activity != tree.owner) {
            continue;
        }
        const auto* row = bundle.find_layout(b.layout);
        if (!row) {
            diag.warn("missing_layout", tree.owner,
                      "adapter row layout " + b.layout + " does not exist");
            continue;
        }
        std::vector<std::string> candidates;
        collect_by_tag(tree.root, "0", b.view_type, candidates);
        auto nth = used[b.view_type]++;
        std::string view_id;
        if (nth < candidates.size()) {
            view_id = candidates[nth];
        }
        else {
            diag.warn("adapter_view_missing", tree.owner,
                      tree.owner + " has no " + b.view_type
                              + " for the adapter over " + b.layout
                              + "; appending one to the root");
            ComponentNode view{b.view_type,
                               {{"layout_width", "match_parent"},
                                {"layout_height", "wrap_content"}},
                               {}};
            view_id = child_node_id("0", tree.root.children.size());
            append_child(tree, "0", std::move(view), Provenance::adapter_dummy);
        }
        for (int i = 1; i <= spec.row_count; ++i) {
            std::string text = spec.text_template;
            for (auto pos = text.find("{i}"); pos != std::string::npos;
                 pos = text.find("{i}", pos)) {
                auto n = std::to_string(i);
                text.replace(pos, 3, n);
                pos += n.size();
            }
            ComponentNode copy = row->root;
            fill_dummy(copy, text);
            append_child(tree, view_id, std::move(copy),
                         Provenance::adapter_dummy);
        }
    }
    return tree;
}

} // namespace storyboard
