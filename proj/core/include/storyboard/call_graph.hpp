#ifndef STORYBOARD_CALL_GRAPH_HPP
#define STORYBOARD_CALL_GRAPH_HPP

#include "storyboard/code_model.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace storyboard {

/// Directed caller -> callee graph over methods. May contain cycles.
class CallGraph {
public:
    using Edge = std::pair<MethodRef, MethodRef>;

    /// Returns false if the edge was already present.
    bool add_edge(const MethodRef& caller, const MethodRef& callee);

    const std::set<Edge>& edges() const noexcept { return edges_; }
    std::set<MethodRef> nodes() const;

    /// Direct callers of `m`, sorted.
    std::vector<MethodRef> callers_of(const MethodRef& m) const;
    std::vector<MethodRef> callees_of(const MethodRef& m) const;

    friend bool operator==(const CallGraph& a, const CallGraph& b)
    {
        return a.edges_ == b.edges_;
    }

private:
    std::set<Edge> edges_;
    std::map<MethodRef, std::set<MethodRef>> reverse_;
    std::map<MethodRef, std::set<MethodRef>> forward_;
};

/// One edge per `call` statement, deduplicated. Calls into undecompiled
/// classes are dropped. Throws LinkError listing every call to an unknown
/// class or method.
CallGraph build_call_graph(const CodeModel& code);

} // namespace storyboard

#endif
