#include "storyboard/layout_tree.hpp"

#include "storyboard/errors.hpp"

#include <algorithm>
#include <cctype>

namespace storyboard {

std::size_t LayoutTree::size() const
{
    std::size_t n = 1;
    for (const auto& c : children) {
        n += c.size();
    }
    return n;
}

std::size_t LayoutTree::depth() const
{
    std::size_t d = 0;
    for (const auto& c : children) {
        d = std::max(d, c.depth());
    }
    return d + 1;
}

LayoutTree extract_layout_tree(const ComponentNode& root)
{
    LayoutTree t{std::string(simple_tag(root.tag)), {}};
    t.children.reserve(root.children.size());
    for (const auto& c : root.children) {
        t.children.push_back(extract_layout_tree(c));
    }
    return t;
}

LayoutTree extract_layout_tree(const LayoutDocument& doc)
{
    return extract_layout_tree(doc.root);
}

namespace {

// Postorder numbering with leftmost-leaf descendants.
struct Indexed {
    std::vector<const std::string*> label;
    std::vector<int> lmld;
    std::vector<int> keyroots;

    explicit Indexed(const LayoutTree& t)
    {
        walk(t);
        std::vector<bool> seen(label.size() + 1, false);
        for (int i = int(label.size()) - 1; i >= 0; --i) {
            if (!seen[std::size_t(lmld[std::size_t(i)])]) {
                seen[std::size_t(lmld[std::size_t(i)])] = true;
                keyroots.push_back(i);
            }
        }
        std::reverse(keyroots.begin(), keyroots.end());
    }

    int walk(const LayoutTree& t)
    {
        int first = -1;
        for (const auto& c : t.children) {
            int l = walk(c);
            if (first < 0) {
                first = l;
            }
        }
        label.push_back(&t.label);
        int self = int(label.size()) - 1;
        lmld.push_back(first < 0 ? self : first);
        return lmld.back();
    }
};

} // namespace

int tree_edit_distance(const LayoutTree& a, const LayoutTree& b)
{
    Indexed A(a), B(b);
    auto n = A.label.size(), m = B.label.size();
    std::vector<std::vector<int>> td(n, std::vector<int>(m, 0));
    std::vector<std::vector<int>> fd(n + 1, std::vector<int>(m + 1, 0));

    for (int i : A.keyroots) {
        for (int j : B.keyroots) {
            int li = A.lmld[std::size_t(i)], lj = B.lmld[std::size_t(j)];
            // fd is indexed with an offset so that row/column 0 is the empty forest.
            auto F = [&](int x, int y) -> int& {
                return fd[std::size_t(x - li + 1)][std::size_t(y - lj + 1)];
            };
            F(li - 1, lj - 1) = 0;
            for (int x = li; x <= i; ++x) {
                F(x, lj - 1) = F(x - 1, lj - 1) + 1;
            }
            for (int y = lj; y <= j; ++y) {
                F(li - 1, y) = F(li - 1, y - 1) + 1;
            }
            for (int x = li; x <= i; ++x) {
                for (int y = lj; y <= j; ++y) {
                    int del = F(x - 1, y) + 1;
                    int ins = F(x, y - 1) + 1;
                    if (A.lmld[std::size_t(x)] == li && B.lmld[std::size_t(y)] == lj) {
                        int rel = F(x - 1, y - 1)
                                  + (*A.label[std::size_t(x)] == *B.label[std::size_t(y)] ? 0 : 1);
                        F(x, y) = std::min({del, ins, rel});
                        td[std::size_t(x)][std::size_t(y)] = F(x, y);
                    }
                    else {
                        int sub = F(A.lmld[std::size_t(x)] - 1, B.lmld[std::size_t(y)] - 1)
                                  + td[std::size_t(x)][std::size_t(y)];
                        F(x, y) = std::min({del, ins, sub});
                    }
                }
            }
        }
    }
    return td[n - 1][m - 1];
}

namespace {

void format_into(const LayoutTree& t, std::string& out)
{
    out += t.label;
    if (t.children.empty()) {
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) {
            out += ',';
        }
        format_into(t.children[i], out);
    }
    out += ')';
}

bool is_label_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'
           || c == '$';
}

class TreeParser {
public:
    explicit TreeParser(std::string_view s) : s_(s) {}

    LayoutTree parse()
    {
        auto t = node(0);
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("<tree>", 1,
                         "column " + std::to_string(pos_ + 1) + ": " + what);
    }

    LayoutTree node(int depth)
    {
        if (depth > 10000) {
            fail("tree too deep");
        }
        auto start = pos_;
        while (pos_ < s_.size() && is_label_char(s_[pos_])) {
            ++pos_;
        }
        if (pos_ == start) {
            fail(pos_ < s_.size() ? "expected a label" : "unexpected end of input");
        }
        LayoutTree t{std::string(s_.substr(start, pos_ - start)), {}};
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            t.children.push_back(node(depth + 1));
            while (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                t.children.push_back(node(depth + 1));
            }
            if (pos_ >= s_.size() || s_[pos_] != ')') {
                fail("expected ',' or ')'");
            }
            ++pos_;
        }
        return t;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

std::string format_tree(const LayoutTree& tree)
{
    std::string out;
    format_into(tree, out);
    return out;
}

LayoutTree parse_tree(std::string_view text)
{
    return TreeParser(text).parse();
}

} // namespace storyboard
