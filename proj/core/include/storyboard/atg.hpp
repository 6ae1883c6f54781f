#ifndef STORYBOARD_ATG_HPP
#define STORYBOARD_ATG_HPP

#include "storyboard/bundle.hpp"
#include "storyboard/errors.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace storyboard {

enum class NodeKind { activity, fragment };

/// Which extraction branch discovered an edge.
enum class EdgeOrigin { direct, inner_class, fragment_merged, backward_cg };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeOrigin origin);

struct TransitionEdge {
    std::string source;
    std::string target;
    /// Every branch that found this pair.
    std::set<EdgeOrigin> origins;

    friend bool operator==(const TransitionEdge&, const TransitionEdge&) = default;
};

/// <activity, view_type, row layout>. `activity` is the page owner and may
/// name a fragment when the adapter is set inside one.
struct AdapterBinding {
    std::string activity;
    std::string view_type;
    std::string layout;

    friend auto operator<=>(const AdapterBinding&, const AdapterBinding&) = default;
};

/// Activities started from inside a fragment, plus the activity hosting it.
struct FragmentRelation {
    std::optional<std::string> host;
    std::string fragment;
    std::vector<std::string> started_targets;

    friend bool operator==(const FragmentRelation&, const FragmentRelation&) = default;
};

/// host activity -> fragment, kept for page rendering.
struct FragmentHost {
    std::string host;
    std::string fragment;

    friend auto operator<=>(const FragmentHost&, const FragmentHost&) = default;
};

class TransitionGraph {
public:
    using PairKey = std::pair<std::string, std::string>;

    std::string app_id;
    LayoutKind app_layout_kind = LayoutKind::static_layout;
    std::map<std::string, NodeKind> nodes;
    std::vector<AdapterBinding> adapters;
    std::vector<FragmentRelation> fragment_relations;
    std::set<FragmentHost> fragment_hosts;
    std::map<std::string, LayoutKind> layout_kind;
    std::vector<Warning> warnings;

    /// Adds `source -> target`, unioning the origin into an existing edge.
    void add_edge(const std::string& source, const std::string& target,
                  EdgeOrigin origin);

    bool has_edge(const std::string& source, const std::string& target) const;
    const std::set<EdgeOrigin>* origins(const std::string& source,
                                        const std::string& target) const;

    /// Edges sorted by (source, target).
    std::vector<TransitionEdge> edges() const;
    std::set<PairKey> pairs() const;
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::vector<std::string> activities() const;
    std::vector<std::string> fragments() const;
    /// Fragments hosted by `activity`, sorted.
    std::vector<std::string> fragments_of(const std::string& activity) const;

private:
    std::map<PairKey, std::set<EdgeOrigin>> edges_;
};

/// Resolves the class started by the start statement at `index` of
/// `method`. A variable target is traced backward to its most recent
/// `new_intent` binding. Throws UnresolvedTransition.
std::string resolve_intent_target(const MethodModel& method, std::size_t index);

/// Activities from which `method` is reachable over reversed call edges,
/// including `method` itself. Inner classes count as their enclosing
/// activity. Terminates on cyclic graphs.
std::set<std::string> resolve_caller_activities(const MethodRef& method,
                                                const CallGraph& cg,
                                                const CodeModel& code);

/// Adds host -> target edges (origin fragment_merged) for every relation
/// with a known host and records host -> fragment pairs. Relations without a
/// host produce a warning.
TransitionGraph merge_fragment_relations(TransitionGraph graph,
                                         const std::vector<FragmentRelation>& relations);

/// One binding per set_adapter whose source resolves to a layout.
std::vector<AdapterBinding> extract_adapters(const AppBundle& bundle,
                                             Diagnostics& diag);
std::vector<AdapterBinding> extract_adapters(const AppBundle& bundle);

/// Full extraction: transitions, fragment merging, adapters, layout kinds.
TransitionGraph extract_transitions(const AppBundle& bundle);

/// Serializes the graph as `atg.json`. `inferred` fills the per-node
/// inferred_name field (null when absent).
std::string to_json(const TransitionGraph& graph,
                    const std::map<std::string, std::string>& inferred = {});

} // namespace storyboard

#endif
