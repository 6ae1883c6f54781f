#ifndef STORYBOARD_LAYOUT_TREE_HPP
#define STORYBOARD_LAYOUT_TREE_HPP

#include "storyboard/layout.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace storyboard {

/// Ordered labeled tree of widget tags; attributes are dropped.
struct LayoutTree {
    std::string label;
    std::vector<LayoutTree> children;

    std::size_t size() const;
    std::size_t depth() const;

    friend bool operator==(const LayoutTree&, const LayoutTree&) = default;
};

/// Projects a component tree onto its tags. Package qualifiers are
/// stripped so `androidx.recyclerview.widget.RecyclerView` and
/// `RecyclerView` compare equal.
LayoutTree extract_layout_tree(const ComponentNode& root);
LayoutTree extract_layout_tree(const LayoutDocument& doc);

/// Zhang-Shasha ordered tree edit distance with unit insert, delete and
/// relabel costs.
int tree_edit_distance(const LayoutTree& a, const LayoutTree& b);

/// Parenthesized preorder form used by the corpus file:
///   node  := label [ '(' node { ',' node } ')' ]
///   label := [A-Za-z0-9_.$]+
std::string format_tree(const LayoutTree& tree);
/// Throws ParseError (line 1, column in the message) on malformed text.
LayoutTree parse_tree(std::string_view text);

} // namespace storyboard

#endif
