#include "storyboard/call_graph.hpp"

#include "storyboard/errors.hpp"

namespace storyboard {

bool CallGraph::add_edge(const MethodRef& caller, const MethodRef& callee)
{
    if (!edges_.emplace(caller, callee).second) {
        return false;
    }
    forward_[caller].insert(callee);
    reverse_[callee].insert(caller);
    return true;
}

std::set<MethodRef> CallGraph::nodes() const
{
    std::set<MethodRef> out;
    for (const auto& [a, b] : edges_) {
        out.insert(a);
        out.insert(b);
    }
    return out;
}

std::vector<MethodRef> CallGraph::callers_of(const MethodRef& m) const
{
    auto it = reverse_.find(m);
    if (it == reverse_.end()) {
        return {};
    }
    return {it->second.begin(), it->second.end()};
}

std::vector<MethodRef> CallGraph::callees_of(const MethodRef& m) const
{
    auto it = forward_.find(m);
    if (it == forward_.end()) {
        return {};
    }
    return {it->second.begin(), it->second.end()};
}

CallGraph build_call_graph(const CodeModel& code)
{
    CallGraph cg;
    std::set<std::string> unresolved;
    for (const auto& cls : code.classes()) {
        for (const auto& m : cls.methods) {
            for (const auto& s : m.statements) {
                const auto* call = std::get_if<stmt::Call>(&s);
                if (!call) {
                    continue;
                }
                const auto* target = code.find(call->callee.cls);
                if (target && target->undecompiled) {
                    continue;
                }
                if (!target || !target->find_method(call->callee.method)) {
                    unresolved.insert("call " + cls.name + "." + m.name
                                      + " -> " + call->callee.str());
                    continue;
                }
                cg.add_edge({cls.name, m.name}, call->callee);
            }
        }
    }
    if (!unresolved.empty()) {
        throw LinkError({unresolved.begin(), unresolved.end()});
    }
    return cg;
}

} // namespace storyboard
