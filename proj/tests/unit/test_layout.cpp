#include <storyboard/errors.hpp>
#include <storyboard/layout.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace storyboard;

TEST(Layout, ParsesTreeAndStripsNamespace)
{
    auto doc = parse_layout(R"(<?xml version="1.0" encoding="utf-8"?>
<LinearLayout xmlns:android="http://schemas.android.com/apk/res/android"
    android:orientation="vertical">
  <TextView android:id="@+id/title" android:text="Hello"/>
  <FrameLayout><Button android:text="Go"/></FrameLayout>
</LinearLayout>)",
                            "res/layout/main.xml");
    EXPECT_EQ(doc.name, "main");
    EXPECT_EQ(doc.root.tag, "LinearLayout");
    EXPECT_EQ(doc.root.attributes.size(), 1u);
    EXPECT_EQ(doc.root.attributes.get_or("orientation", ""), "vertical");
    ASSERT_EQ(doc.root.children.size(), 2u);
    EXPECT_EQ(doc.root.children[0].id(), "title");
    EXPECT_EQ(doc.root.children[1].children[0].tag, "Button");
    EXPECT_EQ(doc.root.subtree_size(), 4u);
}

TEST(Layout, ExplicitNameWins)
{
    auto doc = parse_layout("<FrameLayout/>", "x.xml", "other");
    EXPECT_EQ(doc.name, "other");
}

TEST(Layout, DuplicateAttributeIsRejected)
{
    try {
        parse_layout("<FrameLayout>\n<TextView android:text=\"a\" text=\"b\"/>\n</FrameLayout>",
                     "dup.xml");
        FAIL();
    }
    catch (const ParseError& e) {
        EXPECT_EQ(e.file(), "dup.xml");
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Layout, LeafWithChildrenIsRejected)
{
    EXPECT_THROW(parse_layout("<FrameLayout><TextView><Button/></TextView></FrameLayout>", "a.xml"),
                 ParseError);
}

TEST(Layout, LeafRootIsRejected)
{
    EXPECT_THROW(parse_layout("<Button/>", "a.xml"), ParseError);
}

TEST(Layout, MalformedXmlReportsLine)
{
    try {
        parse_layout("<FrameLayout>\n\n<TextView>\n</FrameLayout>", "bad.xml");
        FAIL();
    }
    catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(Layout, CustomContainersAreViewGroups)
{
    EXPECT_TRUE(is_view_group("com.example.FancyPanel"));
    EXPECT_TRUE(is_leaf_widget("TextView"));
    EXPECT_TRUE(is_leaf_widget("android.widget.Button"));
    EXPECT_EQ(simple_tag("androidx.recyclerview.widget.RecyclerView"), "RecyclerView");
    EXPECT_EQ(normalize_attribute_name("android:text"), "text");
}

TEST(Layout, AttributeSetEqualityIgnoresOrder)
{
    AttributeSet a{{"x", "1"}, {"y", "2"}};
    AttributeSet b{{"y", "2"}, {"x", "1"}};
    EXPECT_EQ(a, b);
    EXPECT_FALSE(b.insert("x", "3"));
    b.set("x", "3");
    EXPECT_NE(a, b);
    EXPECT_TRUE(b.erase("x"));
    EXPECT_FALSE(b.contains("x"));
}

TEST(Layout, IdPrefixesAreStripped)
{
    ComponentNode n{"TextView", {{"id", "@id/name"}}, {}};
    EXPECT_EQ(n.id(), "name");
    ComponentNode m{"TextView", {}, {}};
    EXPECT_FALSE(m.id().has_value());
}

namespace {

ComponentNode random_node(std::mt19937& rng, int depth)
{
    static const char* containers[] = {"LinearLayout", "FrameLayout", "RelativeLayout",
                                       "ScrollView"};
    static const char* leaves[] = {"TextView", "Button", "ImageView", "EditText"};
    static const char* texts[] = {"plain", "a & b", "<tag>", "quote \"q\"", "it's"};
    std::uniform_int_distribution<int> pick(0, 3);
    ComponentNode n;
    bool leaf = depth > 2 || pick(rng) == 0;
    n.tag = leaf ? leaves[pick(rng)] : containers[pick(rng)];
    int attrs = pick(rng);
    for (int i = 0; i < attrs; ++i) {
        n.attributes.set("attr" + std::to_string(i), texts[pick(rng) % 5]);
    }
    if (!leaf) {
        int kids = pick(rng);
        for (int i = 0; i < kids; ++i) {
            n.children.push_back(random_node(rng, depth + 1));
        }
    }
    return n;
}

} // namespace

TEST(Layout, SerializeParseRoundTrip)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        ComponentNode root = random_node(rng, 0);
        if (is_leaf_widget(root.tag)) {
            root.tag = "LinearLayout";
        }
        auto xml = serialize_layout(root);
        EXPECT_EQ(parse_layout(xml, "rt.xml").root, root) << xml;
    }
}
