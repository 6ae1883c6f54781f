#include "storyboard/atg.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <deque>

namespace storyboard {

std::string_view to_string(NodeKind kind)
{
    return kind == NodeKind::activity ? "activity" : "fragment";
}

std::string_view to_string(EdgeOrigin origin)
{
    switch (origin) {
    case EdgeOrigin::direct: return "direct";
    case EdgeOrigin::inner_class: return "inner_class";
    case EdgeOrigin::fragment_merged: return "fragment_merged";
    case EdgeOrigin::backward_cg: return "backward_cg";
    }
    return "direct";
}

void TransitionGraph::add_edge(const std::string& source,
                               const std::string& target, EdgeOrigin origin)
{
    edges_[{source, target}].insert(origin);
}

bool TransitionGraph::has_edge(const std::string& source,
                               const std::string& target) const
{
    return edges_.count({source, target}) != 0;
}

const std::set<EdgeOrigin>* TransitionGraph::origins(
        const std::string& source, const std::string& target) const
{
    auto it = edges_.find({source, target});
    return it == edges_.end() ? nullptr : &it->second;
}

std::vector<TransitionEdge> TransitionGraph::edges() const
{
    std::vector<TransitionEdge> out;
    out.reserve(edges_.size());
    for (const auto& [key, origins] : edges_) {
        out.push_back({key.first, key.second, origins});
    }
    return out;
}

std::set<TransitionGraph::PairKey> TransitionGraph::pairs() const
{
    std::set<PairKey> out;
    for (const auto& [key, _] : edges_) {
        out.insert(key);
    }
    return out;
}

std::vector<std::string> TransitionGraph::activities() const
{
    std::vector<std::string> out;
    for (const auto& [name, kind] : nodes) {
        if (kind == NodeKind::activity) {
            out.push_back(name);
        }
    }
    return out;
}

std::vector<std::string> TransitionGraph::fragments() const
{
    std::vector<std::string> out;
    for (const auto& [name, kind] : nodes) {
        if (kind == NodeKind::fragment) {
            out.push_back(name);
        }
    }
    return out;
}

std::vector<std::string> TransitionGraph::fragments_of(
        const std::string& activity) const
{
    std::vector<std::string> out;
    for (const auto& fh : fragment_hosts) {
        if (fh.host == activity) {
            out.push_back(fh.fragment);
        }
    }
    return out;
}

std::string resolve_intent_target(const MethodModel& method, std::size_t index)
{
    if (index >= method.statements.size()) {
        throw UnresolvedTransition("statement index out of range in "
                                   + method.name);
    }
    const auto* start = std::get_if<stmt::StartActivity>(&method.statements[index]);
    if (!start) {
        throw UnresolvedTransition("statement is not a start_activity in "
                                   + method.name);
    }
    if (!start->target_is_var) {
        return start->target;
    }
    for (std::size_t i = index; i-- > 0;) {
        if (const auto* ni = std::get_if<stmt::NewIntent>(&method.statements[i]);
            ni && ni->var == start->target) {
            return ni->target;
        }
    }
    throw UnresolvedTransition("intent variable '" + start->target + "' in "
                               + method.name
                               + " is never bound to a class");
}

namespace {

// Who runs the code of a class, per the extraction branches.
struct Site {
    enum class Kind { activity, fragment, callers };

    Kind kind = Kind::callers;
    std::string name;
    EdgeOrigin origin = EdgeOrigin::backward_cg;
};

// A class nested (at any depth) inside a fragment belongs to that fragment;
// otherwise an inner class belongs to its nearest enclosing activity.
Site classify_site(const ClassModel& cls, const CodeModel& code)
{
    std::vector<const ClassModel*> chain{&cls};
    std::set<std::string> seen{cls.name};
    while (chain.back()->outer_class) {
        const auto* outer = code.find(*chain.back()->outer_class);
        if (!outer || !seen.insert(outer->name).second) {
            break;
        }
        chain.push_back(outer);
    }
    for (const auto* c : chain) {
        if (c->kind == ClassKind::fragment) {
            return {Site::Kind::fragment, c->name, EdgeOrigin::direct};
        }
    }
    if (cls.kind == ClassKind::activity) {
        return {Site::Kind::activity, cls.name, EdgeOrigin::direct};
    }
    if (cls.kind == ClassKind::inner) {
        for (const auto* c : chain) {
            if (c->kind == ClassKind::activity) {
                return {Site::Kind::activity, c->name, EdgeOrigin::inner_class};
            }
        }
    }
    return {};
}

struct CallerComponents {
    std::set<std::string> activities;
    std::set<std::string> fragments;
};

CallerComponents caller_components(const MethodRef& start, const CallGraph& cg,
                                   const CodeModel& code)
{
    CallerComponents out;
    std::set<MethodRef> visited{start};
    std::deque<MethodRef> queue{start};
    while (!queue.empty()) {
        auto cur = std::move(queue.front());
        queue.pop_front();
        if (const auto* cls = code.find(cur.cls)) {
            auto site = classify_site(*cls, code);
            if (site.kind == Site::Kind::activity) {
                out.activities.insert(site.name);
            }
            else if (site.kind == Site::Kind::fragment) {
                out.fragments.insert(site.name);
            }
        }
        for (auto& caller : cg.callers_of(cur)) {
            if (visited.insert(caller).second) {
                queue.push_back(std::move(caller));
            }
        }
    }
    return out;
}

bool is_adapter_view(std::string_view tag)
{
    static constexpr std::array<std::string_view, 4> types{
            "ListView", "GridView", "RecyclerView", "ViewPager"};
    return std::find(types.begin(), types.end(), simple_tag(tag))
           != types.end();
}

std::optional<std::string> resolve_adapter_layout(const MethodModel& m,
                                                  std::size_t index,
                                                  const stmt::SetAdapter& sa)
{
    if (sa.source == stmt::SetAdapter::Source::layout) {
        return sa.source_name;
    }
    for (std::size_t i = index; i-- > 0;) {
        if (const auto* inf = std::get_if<stmt::Inflate>(&m.statements[i]);
            inf && inf->var == sa.source_name) {
            return inf->layout;
        }
    }
    return std::nullopt;
}

} // namespace

std::set<std::string> resolve_caller_activities(const MethodRef& method,
                                                const CallGraph& cg,
                                                const CodeModel& code)
{
    return caller_components(method, cg, code).activities;
}

TransitionGraph merge_fragment_relations(
        TransitionGraph graph, const std::vector<FragmentRelation>& relations)
{
    for (const auto& r : relations) {
        if (std::find(graph.fragment_relations.begin(),
                      graph.fragment_relations.end(), r)
            == graph.fragment_relations.end()) {
            graph.fragment_relations.push_back(r);
        }
        graph.nodes.emplace(r.fragment, NodeKind::fragment);
        if (!r.host) {
            graph.warnings.push_back(
                    {"fragment_without_host", r.fragment,
                     "no activity hosting fragment " + r.fragment + " was found; "
                             + std::to_string(r.started_targets.size())
                             + " started target(s) not merged"});
            continue;
        }
        graph.nodes.emplace(*r.host, NodeKind::activity);
        graph.fragment_hosts.insert({*r.host, r.fragment});
        for (const auto& t : r.started_targets) {
            graph.nodes.emplace(t, NodeKind::activity);
            graph.add_edge(*r.host, t, EdgeOrigin::fragment_merged);
        }
    }
    return graph;
}

std::vector<AdapterBinding> extract_adapters(const AppBundle& bundle,
                                             Diagnostics& diag)
{
    std::vector<AdapterBinding> out;
    auto push = [&](AdapterBinding b) {
        if (std::find(out.begin(), out.end(), b) == out.end()) {
            out.push_back(std::move(b));
        }
    };
    const auto& code = bundle.code;
    for (const auto& cls : code.classes()) {
        auto site = classify_site(cls, code);
        for (const auto& m : cls.methods) {
            for (std::size_t i = 0; i < m.statements.size(); ++i) {
                const auto* sa = std::get_if<stmt::SetAdapter>(&m.statements[i]);
                if (!sa || sa->source == stmt::SetAdapter::Source::fragment) {
                    continue;
                }
                auto where = cls.name + "." + m.name;
                if (!is_adapter_view(sa->view_type)) {
                    diag.warn("unsupported_adapter_view", cls.name,
                              where + ": " + sa->view_type
                                      + " is not an adapter view type");
                    continue;
                }
                auto layout = resolve_adapter_layout(m, i, *sa);
                if (!layout || !bundle.find_layout(*layout)) {
                    diag.warn("unresolved_adapter", cls.name,
                              where + ": adapter source '" + sa->source_name
                                      + "' does not resolve to a layout");
                    continue;
                }
                std::string view_type(simple_tag(sa->view_type));
                if (site.kind != Site::Kind::callers) {
                    push({site.name, view_type, *layout});
                    continue;
                }
                auto comps = caller_components({cls.name, m.name},
                                               bundle.call_graph, code);
                if (comps.activities.empty() && comps.fragments.empty()) {
                    diag.warn("unresolved_adapter", cls.name,
                              where + ": no activity or fragment reaches this "
                                      "adapter");
                }
                for (const auto& a : comps.activities) {
                    push({a, view_type, *layout});
                }
                for (const auto& f : comps.fragments) {
                    push({f, view_type, *layout});
                }
            }
        }
    }
    return out;
}

std::vector<AdapterBinding> extract_adapters(const AppBundle& bundle)
{
    Diagnostics diag;
    return extract_adapters(bundle, diag);
}

TransitionGraph extract_transitions(const AppBundle& bundle)
{
    const auto& code = bundle.code;
    TransitionGraph g;
    g.app_id = bundle.app_id;
    g.app_layout_kind = detect_layout_type(bundle);
    Diagnostics diag;

    for (const auto& cls : code.classes()) {
        if (cls.kind == ClassKind::activity || cls.kind == ClassKind::fragment) {
            g.nodes.emplace(cls.name, cls.kind == ClassKind::activity
                                              ? NodeKind::activity
                                              : NodeKind::fragment);
            g.layout_kind.emplace(cls.name, detect_layout_type(cls));
        }
    }

    std::map<std::string, std::set<std::string>> frag_targets;
    std::map<std::string, std::set<std::string>> frag_hosts;

    for (const auto& cls : code.classes()) {
        if (cls.undecompiled) {
            diag.warn("undecompiled", cls.name,
                      cls.name + " could not be decompiled; skipped");
            continue;
        }
        auto site = classify_site(cls, code);
        for (const auto& m : cls.methods) {
            auto where = cls.name + "." + m.name;
            for (std::size_t i = 0; i < m.statements.size(); ++i) {
                const auto& s = m.statements[i];
                if (std::holds_alternative<stmt::StartActivity>(s)) {
                    std::string target;
                    try {
                        target = resolve_intent_target(m, i);
                    }
                    catch (const UnresolvedTransition& e) {
                        diag.warn("unresolved_transition", cls.name, e.what());
                        continue;
                    }
                    const auto* tcls = code.find(target);
                    if (!tcls || tcls->kind != ClassKind::activity) {
                        diag.warn("non_activity_target", cls.name,
                                  where + " starts " + target
                                          + ", which is not an activity");
                        continue;
                    }
                    switch (site.kind) {
                    case Site::Kind::fragment:
                        frag_targets[site.name].insert(target);
                        break;
                    case Site::Kind::activity:
                        g.add_edge(site.name, target, site.origin);
                        break;
                    case Site::Kind::callers: {
                        auto comps = caller_components({cls.name, m.name},
                                                       bundle.call_graph, code);
                        for (const auto& a : comps.activities) {
                            g.add_edge(a, target, EdgeOrigin::backward_cg);
                        }
                        for (const auto& f : comps.fragments) {
                            frag_targets[f].insert(target);
                        }
                        if (comps.activities.empty() && comps.fragments.empty()) {
                            diag.warn("unresolved_transition", cls.name,
                                      where + " starts " + target
                                              + " but no activity reaches it");
                        }
                        break;
                    }
                    }
                    continue;
                }

                std::string fragment;
                if (const auto* fc = std::get_if<stmt::FragmentCommit>(&s)) {
                    fragment = fc->fragment;
                }
                else if (const auto* sa = std::get_if<stmt::SetAdapter>(&s);
                         sa && sa->source == stmt::SetAdapter::Source::fragment) {
                    fragment = sa->source_name;
                }
                else {
                    continue;
                }
                const auto* fcls = code.find(fragment);
                if (!fcls || fcls->kind != ClassKind::fragment) {
                    diag.warn("not_a_fragment", cls.name,
                              where + " hosts " + fragment
                                      + ", which is not a fragment");
                    continue;
                }
                frag_hosts[fragment]; // known even if no host resolves
                auto nested = [&](const std::string& outer) {
                    diag.warn("nested_fragment", fragment,
                              fragment + " is hosted by fragment " + outer
                                      + "; nested fragments are not merged");
                };
                switch (site.kind) {
                case Site::Kind::activity:
                    frag_hosts[fragment].insert(site.name);
                    break;
                case Site::Kind::fragment: nested(site.name); break;
                case Site::Kind::callers: {
                    auto comps = caller_components({cls.name, m.name},
                                                   bundle.call_graph, code);
                    frag_hosts[fragment].insert(comps.activities.begin(),
                                                comps.activities.end());
                    for (const auto& f : comps.fragments) {
                        nested(f);
                    }
                    break;
                }
                }
            }
        }
    }

    std::set<std::string> fragments;
    for (const auto& [f, _] : frag_targets) {
        fragments.insert(f);
    }
    for (const auto& [f, _] : frag_hosts) {
        fragments.insert(f);
    }
    std::vector<FragmentRelation> relations;
    for (const auto& f : fragments) {
        std::vector<std::string> targets;
        if (auto it = frag_targets.find(f); it != frag_targets.end()) {
            targets.assign(it->second.begin(), it->second.end());
        }
        const auto& hosts = frag_hosts[f];
        if (hosts.empty()) {
            relations.push_back({std::nullopt, f, targets});
        }
        for (const auto& h : hosts) {
            relations.push_back({h, f, targets});
        }
    }

    g.warnings = diag.items();
    g = merge_fragment_relations(std::move(g), relations);

    Diagnostics adapter_diag;
    g.adapters = extract_adapters(bundle, adapter_diag);
    g.warnings.insert(g.warnings.end(), adapter_diag.items().begin(),
                      adapter_diag.items().end());
    return g;
}

std::string to_json(const TransitionGraph& graph,
                    const std::map<std::string, std::string>& inferred)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["app_id"] = graph.app_id;
    doc["layout_type"] = to_string(graph.app_layout_kind);
    auto nodes = ordered_json::array();
    for (const auto& [name, kind] : graph.nodes) {
        ordered_json n;
        n["name"] = name;
        n["kind"] = to_string(kind);
        auto lk = graph.layout_kind.find(name);
        n["layout_kind"] = to_string(lk == graph.layout_kind.end()
                                             ? LayoutKind::static_layout
                                             : lk->second);
        if (auto it = inferred.find(name); it != inferred.end()) {
            n["inferred_name"] = it->second;
        }
        else {
            n["inferred_name"] = nullptr;
        }
        nodes.push_back(std::move(n));
    }
    doc["nodes"] = std::move(nodes);

    auto edges = ordered_json::array();
    for (const auto& e : graph.edges()) {
        ordered_json j;
        j["source"] = e.source;
        j["target"] = e.target;
        auto origins = ordered_json::array();
        for (auto o : e.origins) {
            origins.push_back(to_string(o));
        }
        j["origin"] = std::move(origins);
        edges.push_back(std::move(j));
    }
    doc["edges"] = std::move(edges);

    auto hosts = ordered_json::array();
    for (const auto& fh : graph.fragment_hosts) {
        hosts.push_back(ordered_json{{"host", fh.host}, {"fragment", fh.fragment}});
    }
    doc["fragment_hosts"] = std::move(hosts);

    auto relations = ordered_json::array();
    for (const auto& r : graph.fragment_relations) {
        ordered_json j;
        j["host"] = r.host ? ordered_json(*r.host) : ordered_json(nullptr);
        j["fragment"] = r.fragment;
        j["started_targets"] = r.started_targets;
        relations.push_back(std::move(j));
    }
    doc["fragment_relations"] = std::move(relations);

    auto adapters = ordered_json::array();
    for (const auto& a : graph.adapters) {
        adapters.push_back(ordered_json{{"activity", a.activity},
                                        {"view_type", a.view_type},
                                        {"layout", a.layout}});
    }
    doc["adapters"] = std::move(adapters);

    auto warnings = ordered_json::array();
    for (const auto& w : graph.warnings) {
        warnings.push_back(ordered_json{{"code", w.code},
                                        {"subject", w.subject},
                                        {"message", w.message}});
    }
    doc["warnings"] = std::move(warnings);
    return doc.dump(2) + "\n";
}

} // namespace storyboard
