#include <storyboard/errors.hpp>
#include <storyboard/resources.hpp>

#include <gtest/gtest.h>

using namespace storyboard;

TEST(Resources, NormalizesColors)
{
    EXPECT_EQ(normalize_color("#abc"), "#AABBCC");
    EXPECT_EQ(normalize_color("#1a2b3c"), "#1A2B3C");
    EXPECT_EQ(normalize_color("#801a2b3c"), "#1A2B3C");
    EXPECT_FALSE(normalize_color("red"));
    EXPECT_FALSE(normalize_color("#12345"));
    EXPECT_FALSE(normalize_color("#GGGGGG"));
}

TEST(Resources, ParsesValueFiles)
{
    ResourceTable t;
    parse_values(R"(<resources>
  <string name="app">Demo</string>
  <color name="primary">#3f51b5</color>
  <dimen name="gap">16dp</dimen>
</resources>)",
                 "values.xml", t);
    EXPECT_EQ(t.resolve("@string/app"), "Demo");
    EXPECT_EQ(t.resolve("@color/primary"), "#3F51B5");
    EXPECT_EQ(t.resolve("@dimen/gap"), "16dp");
    EXPECT_FALSE(t.find("@drawable/icon"));
    EXPECT_FALSE(t.find("@string/none"));
    EXPECT_THROW(t.resolve("@string/none"), UnresolvedAttribute);
}

TEST(Resources, RejectsInvalidColor)
{
    ResourceTable t;
    EXPECT_THROW(parse_values("<resources>\n<color name=\"x\">blue</color></resources>",
                              "colors.xml", t),
                 ParseError);
}

TEST(Resources, RejectsWrongRoot)
{
    ResourceTable t;
    EXPECT_THROW(parse_values("<values/>", "v.xml", t), ParseError);
}

TEST(Resources, ReferenceSyntax)
{
    EXPECT_TRUE(ResourceTable::is_reference("@string/a"));
    EXPECT_TRUE(ResourceTable::is_reference("@color/b"));
    EXPECT_FALSE(ResourceTable::is_reference("plain"));
    EXPECT_FALSE(ResourceTable::is_reference("@string/"));
}
