#include <gtest/gtest.h>

#include <string>

#include "sentimentcast/html.hpp"

namespace html = sentimentcast::html;

TEST(Html, TextSkipsScriptAndStyle) {
  const html::Document doc("<p>Profit rose.</p><script>x</script><style>p{}</style>");
  EXPECT_EQ(html::text_content(doc.root()), "Profit rose.");
}

TEST(Html, InlineTagsDoNotSplitWords) {
  const html::Document doc("<div><b>bankruptcy</b> looms</div><p>bank<i>rupt</i></p>");
  EXPECT_EQ(html::text_content(doc.root()), "bankruptcy looms bankrupt");
}

TEST(Html, BlockTagsSeparateWords) {
  const html::Document doc("<p>one</p><p>two</p><li>three</li>four<br>five");
  EXPECT_EQ(html::text_content(doc.root()), "one two three four five");
}

TEST(Html, MarkupOnlyHasNoText) {
  const html::Document doc("<html><head><title>t</title></head><body><div><img src=x></div></body></html>");
  EXPECT_EQ(html::text_content(doc.root()), "");
}

TEST(Html, DecodesEntities) {
  EXPECT_EQ(html::decode_entities("a &amp; b &lt;c&gt; &#65;&#x42; &bogus; & x"), "a & b <c> AB &bogus; & x");
  const html::Document doc("<a href=\"/q?a=1&amp;b=2\">x</a>");
  const auto* a = html::find_first(doc.root(), html::Selector("a"));
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(*a->attribute("href"), "/q?a=1&b=2");
}

TEST(Html, SelectorsMatchTagIdClassAndDescendants) {
  const html::Document doc(
      "<div id=main class='mod news wide'><ul><li><a href=1>x</a></li></ul></div><div class=other><a href=2>y</a></div>");
  EXPECT_NE(html::find_first(doc.root(), html::Selector("#main")), nullptr);
  EXPECT_NE(html::find_first(doc.root(), html::Selector("div.news.wide")), nullptr);
  EXPECT_EQ(html::find_first(doc.root(), html::Selector("div.missing")), nullptr);
  const auto links = html::find_all(doc.root(), html::Selector(".news a"));
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(*links[0]->attribute("href"), "1");
  EXPECT_EQ(html::find_all(doc.root(), html::Selector("a")).size(), 2u);
}

TEST(Html, MalformedInputNeverThrows) {
  const char* inputs[] = {"",          "<",          "<<<>>>",         "<div><p>unclosed",       "</p></div>text",
                          "<a href='x", "<!-- open", "<script>never", "<div class=>x</DIV>", "&#xZZ; &#99999999;"};
  for (const char* in : inputs) {
    EXPECT_NO_THROW({
      const html::Document doc(in);
      (void)html::text_content(doc.root());
    }) << in;
  }
}

TEST(Html, StrayEndTagsAreIgnored) {
  const html::Document doc("<div id=a><span>x</p></span><b>y</b></div>");
  const auto* div = html::find_first(doc.root(), html::Selector("#a"));
  ASSERT_NE(div, nullptr);
  EXPECT_EQ(html::text_content(*div), "xy");
}
