#ifndef STORYBOARD_SYNTHESIZER_HPP
#define STORYBOARD_SYNTHESIZER_HPP

#include "storyboard/atg.hpp"
#include "storyboard/bundle.hpp"
#include "storyboard/errors.hpp"
#include "storyboard/layout.hpp"

#include <map>
#include <string>
#include <vector>

namespace storyboard {

enum class Provenance { static_node, converted_dynamic, adapter_dummy };

std::string_view to_string(Provenance p);

/// Node ids are dotted child-index paths: the root is "0", its second child
/// "0.1", and so on. Nodes are only ever appended, so ids are stable.
std::string child_node_id(const std::string& parent, std::size_t index);

/// Fully static component tree of one activity or fragment page.
struct StaticLayoutTree {
    std::string owner;
    ComponentNode root;
    /// Only non-static nodes are listed.
    std::map<std::string, Provenance> provenance;
    /// Set when the page had nothing to analyse and a blank root was used.
    bool empty_page = false;

    Provenance provenance_of(const std::string& node_id) const;
    std::size_t count(Provenance p) const;
};

/// Dummy content placed in adapter-backed views.
struct DummyDataSpec {
    int row_count = 5;
    /// `{i}` is replaced by the 1-based row number.
    std::string text_template = "Item {i}";
};

/// A component built in code and the view it is added to: `root`, or
/// `@id/<name>` for a node of the static layout.
struct DynamicComponent {
    ComponentNode node;
    std::string parent;
};

/// Resolves an attribute value. Calls are followed through `return_value`
/// statements for at most `max_call_depth` hops; resources are looked up in
/// the bundle. Throws UnresolvedAttribute.
std::string resolve_attribute(const ValueRef& value, const AppBundle& bundle,
                              int max_call_depth = 5);

/// Forward data-flow over one lifecycle method: one entry per top-level
/// add_view / inflate-into, in statement order, with attributes resolved.
/// Unresolvable attributes become empty strings and a warning.
std::vector<DynamicComponent> resolve_dynamic_components(
        const MethodModel& method, const AppBundle& bundle, Diagnostics& diag,
        const std::string& owner = {});

/// Converts the page of `owner` to a static tree. Static pages are copied;
/// dynamic and hybrid pages get their code-built components appended to the
/// parent layout. Throws MissingLayout when a referenced layout file does
/// not exist.
StaticLayoutTree synthesize_static_layout(const std::string& owner,
                                          const AppBundle& bundle,
                                          const TransitionGraph& graph,
                                          Diagnostics& diag);

/// Fills adapter-backed views with `spec.row_count` copies of the bound row
/// layout. Bindings for other owners are ignored. A binding whose view type
/// is absent from the tree appends a new view to the root and warns.
StaticLayoutTree inject_adapter_views(StaticLayoutTree tree,
                                      const std::vector<AdapterBinding>& adapters,
                                      const DummyDataSpec& spec,
                                      const AppBundle& bundle,
                                      Diagnostics& diag);

/// Parent layout used for code-built pages without a layout file.
ComponentNode synthetic_root();

} // namespace storyboard

#endif
