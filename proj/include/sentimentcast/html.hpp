#pragma once

// Minimal forgiving HTML reader: builds an element tree from static markup,
// decodes common entities and answers simple CSS-like selector queries
// (`tag`, `#id`, `.class`, `tag#id.class`, descendant combinator by space).
// It never throws on malformed input; unclosed elements are closed at EOF
// and stray end tags are ignored.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentimentcast::html {

struct Node {
  enum class Kind { element, text };

  Kind kind = Kind::element;
  std::string tag;  // lowercase; empty for text and the document root
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // decoded text for text nodes
  std::vector<std::unique_ptr<Node>> children;
  Node* parent = nullptr;

  const std::string* attribute(std::string_view name) const {
    for (const auto& [k, v] : attributes) {
      if (k == name) return &v;
    }
    return nullptr;
  }

  bool has_class(std::string_view cls) const {
    const std::string* value = attribute("class");
    if (!value) return false;
    std::string_view rest = *value;
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(" \t\r\n\f");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto end = rest.find_first_of(" \t\r\n\f");
      if (rest.substr(0, end) == cls) return true;
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end);
    }
    return false;
  }
};

namespace detail {

inline char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

inline bool is_void_element(std::string_view tag) {
  static constexpr std::string_view voids[] = {"area", "base", "br",   "col",   "embed", "hr",    "img",
                                               "input", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(std::begin(voids), std::end(voids), tag) != std::end(voids);
}

inline bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea" || tag == "title";
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x110000) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace detail

inline std::string decode_entities(std::string_view s) {
  static constexpr std::pair<std::string_view, std::string_view> named[] = {
      {"amp", "&"},       {"lt", "<"},         {"gt", ">"},         {"quot", "\""},     {"apos", "'"},
      {"nbsp", " "},      {"mdash", "—"}, {"ndash", "–"}, {"rsquo", "’"}, {"lsquo", "‘"},
      {"rdquo", "”"}, {"ldquo", "“"}, {"hellip", "…"}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    bool done = false;
    if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      bool ok = name.size() > 1;
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      for (std::size_t k = hex ? 2 : 1; ok && k < name.size(); ++k) {
        const char c = detail::lower(name[k]);
        int digit = -1;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        if (digit < 0 || cp > 0x10FFFF) ok = false;
        else cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(digit);
      }
      if (ok && (!hex || name.size() > 2)) {
        detail::append_utf8(out, cp);
        done = true;
      }
    } else {
      for (const auto& [key, value] : named) {
        if (name == key) {
          out += value;
          done = true;
          break;
        }
      }
    }
    if (done) {
      i = semi;
    } else {
      out.push_back('&');
    }
  }
  return out;
}

/// Parsed document. The root node has an empty tag.
class Document {
 public:
  explicit Document(std::string_view source) : root_(std::make_unique<Node>()) { parse(source); }

  const Node& root() const { return *root_; }

 private:
  void parse(std::string_view src) {
    Node* current = root_.get();
    std::size_t i = 0;
    std::string pending_text;

    auto flush_text = [&] {
      if (pending_text.empty()) return;
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::text;
      node->text = decode_entities(pending_text);
      node->parent = current;
      current->children.push_back(std::move(node));
      pending_text.clear();
    };

    while (i < src.size()) {
      if (src[i] != '<') {
        pending_text.push_back(src[i++]);
        continue;
      }
      // Comment.
      if (src.compare(i, 4, "<!--") == 0) {
        flush_text();
        const auto end = src.find("-->", i + 4);
        i = end == std::string_view::npos ? src.size() : end + 3;
        continue;
      }
      // Doctype, CDATA, processing instruction.
      if (i + 1 < src.size() && (src[i + 1] == '!' || src[i + 1] == '?')) {
        flush_text();
        const auto end = src.find('>', i + 2);
        i = end == std::string_view::npos ? src.size() : end + 1;
        continue;
      }
      // End tag.
      if (i + 1 < src.size() && src[i + 1] == '/') {
        std::size_t j = i + 2;
        std::string name;
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '-')) {
          name.push_back(detail::lower(src[j++]));
        }
        const auto end = src.find('>', j);
        if (name.empty()) {
          pending_text.push_back(src[i++]);
          continue;
        }
        flush_text();
        i = end == std::string_view::npos ? src.size() : end + 1;
        for (Node* n = current; n != root_.get(); n = n->parent) {
          if (n->tag == name) {
            current = n->parent;
            break;
          }
        }
        continue;
      }
      // Start tag.
      if (i + 1 >= src.size() || !std::isalpha(static_cast<unsigned char>(src[i + 1]))) {
        pending_text.push_back(src[i++]);
        continue;
      }
      flush_text();
      auto node = std::make_unique<Node>();
      std::size_t j = i + 1;
      while (j < src.size() && !detail::is_space(src[j]) && src[j] != '>' && src[j] != '/') {
        node->tag.push_back(detail::lower(src[j++]));
      }
      bool self_closing = false;
      // Attributes.
      while (j < src.size()) {
        while (j < src.size() && detail::is_space(src[j])) ++j;
        if (j >= src.size()) break;
        if (src[j] == '>') {
          ++j;
          break;
        }
        if (src[j] == '/') {
          self_closing = true;
          ++j;
          continue;
        }
        std::string key;
        while (j < src.size() && !detail::is_space(src[j]) && src[j] != '=' && src[j] != '>' && src[j] != '/') {
          key.push_back(detail::lower(src[j++]));
        }
        while (j < src.size() && detail::is_space(src[j])) ++j;
        std::string value;
        if (j < src.size() && src[j] == '=') {
          ++j;
          while (j < src.size() && detail::is_space(src[j])) ++j;
          if (j < src.size() && (src[j] == '"' || src[j] == '\'')) {
            const char quote = src[j++];
            const auto close = src.find(quote, j);
            const auto stop = close == std::string_view::npos ? src.size() : close;
            value = decode_entities(src.substr(j, stop - j));
            j = close == std::string_view::npos ? src.size() : close + 1;
          } else {
            while (j < src.size() && !detail::is_space(src[j]) && src[j] != '>') value.push_back(src[j++]);
            value = decode_entities(value);
          }
        }
        if (!key.empty()) node->attributes.emplace_back(std::move(key), std::move(value));
        else if (j < src.size() && src[j] != '>') ++j;
      }
      i = j;

      node->parent = current;
      Node* added = node.get();
      current->children.push_back(std::move(node));
      if (self_closing || detail::is_void_element(added->tag)) continue;

      if (detail::is_raw_text_element(added->tag)) {
        // Raw text runs to the matching end tag, case-insensitively.
        const std::string closing = "</" + added->tag;
        std::size_t k = i;
        std::size_t found = std::string_view::npos;
        while (k + closing.size() <= src.size()) {
          bool match = true;
          for (std::size_t c = 0; c < closing.size(); ++c) {
            if (detail::lower(src[k + c]) != closing[c]) {
              match = false;
              break;
            }
          }
          if (match) {
            found = k;
            break;
          }
          ++k;
        }
        const auto stop = found == std::string_view::npos ? src.size() : found;
        if (stop > i) {
          auto text = std::make_unique<Node>();
          text->kind = Node::Kind::text;
          text->text = added->tag == "title" || added->tag == "textarea" ? decode_entities(src.substr(i, stop - i))
                                                                          : std::string(src.substr(i, stop - i));
          text->parent = added;
          added->children.push_back(std::move(text));
        }
        if (found == std::string_view::npos) {
          i = src.size();
        } else {
          const auto gt = src.find('>', found);
          i = gt == std::string_view::npos ? src.size() : gt + 1;
        }
        continue;
      }
      current = added;
    }
    flush_text();
  }

  std::unique_ptr<Node> root_;
};

/// One compound selector: optional tag, optional id, any number of classes.
struct SimpleSelector {
  std::string tag;
  std::string id;
  std::vector<std::string> classes;

  bool matches(const Node& n) const {
    if (n.kind != Node::Kind::element || n.tag.empty()) return false;
    if (!tag.empty() && tag != "*" && n.tag != tag) return false;
    if (!id.empty()) {
      const std::string* v = n.attribute("id");
      if (!v || *v != id) return false;
    }
    return std::all_of(classes.begin(), classes.end(), [&](const std::string& c) { return n.has_class(c); });
  }
};

/// Descendant chain of simple selectors, e.g. "div.news ul a".
class Selector {
 public:
  Selector() = default;
  explicit Selector(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && detail::is_space(text[i])) ++i;
      if (i >= text.size()) break;
      std::size_t j = i;
      while (j < text.size() && !detail::is_space(text[j])) ++j;
      parts_.push_back(parse_simple(text.substr(i, j - i)));
      i = j;
    }
  }

  bool empty() const { return parts_.empty(); }

  bool matches(const Node& n) const {
    if (parts_.empty() || !parts_.back().matches(n)) return false;
    std::size_t k = parts_.size() - 1;
    for (const Node* a = n.parent; a && k > 0; a = a->parent) {
      if (parts_[k - 1].matches(*a)) --k;
    }
    return k == 0;
  }

 private:
  static SimpleSelector parse_simple(std::string_view s) {
    SimpleSelector sel;
    std::string* target = &sel.tag;
    for (char c : s) {
      if (c == '#') {
        target = &sel.id;
      } else if (c == '.') {
        sel.classes.emplace_back();
        target = &sel.classes.back();
      } else {
        target->push_back(target == &sel.tag ? detail::lower(c) : c);
      }
    }
    return sel;
  }

  std::vector<SimpleSelector> parts_;
};

/// Pre-order traversal of every node below (and including) `n`.
inline void visit(const Node& n, const std::function<void(const Node&)>& fn) {
  fn(n);
  for (const auto& c : n.children) visit(*c, fn);
}

inline const Node* find_first(const Node& scope, const Selector& sel) {
  if (sel.matches(scope)) return &scope;
  for (const auto& c : scope.children) {
    if (const Node* hit = find_first(*c, sel)) return hit;
  }
  return nullptr;
}

inline std::vector<const Node*> find_all(const Node& scope, const Selector& sel) {
  std::vector<const Node*> out;
  visit(scope, [&](const Node& n) {
    if (sel.matches(n)) out.push_back(&n);
  });
  return out;
}

inline bool is_block_element(std::string_view tag) {
  static constexpr std::string_view blocks[] = {
      "address", "article", "aside", "blockquote", "br",     "dd",     "div",   "dl",      "dt",
      "figcaption", "figure", "footer", "form",   "h1",     "h2",     "h3",    "h4",      "h5",
      "h6",      "header",  "hr",    "li",        "main",   "nav",    "ol",    "p",       "pre",
      "section", "table",   "tbody", "td",        "tfoot",  "th",     "thead", "tr",      "ul"};
  return std::find(std::begin(blocks), std::end(blocks), tag) != std::end(blocks);
}

inline bool is_hidden_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "noscript" || tag == "template" || tag == "head" ||
         tag == "title" || tag == "iframe" || tag == "svg";
}

/// Visible text of a subtree with whitespace collapsed to single spaces.
/// Block elements separate words; inline elements do not.
inline std::string text_content(const Node& n) {
  std::string raw;
  std::function<void(const Node&)> walk = [&](const Node& node) {
    if (node.kind == Node::Kind::text) {
      raw += node.text;
      return;
    }
    if (is_hidden_element(node.tag)) return;
    const bool block = is_block_element(node.tag);
    if (block) raw.push_back(' ');
    for (const auto& c : node.children) walk(*c);
    if (block) raw.push_back(' ');
  };
  walk(n);

  std::string out;
  bool space = false;
  for (char c : raw) {
    if (detail::is_space(c)) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace sentimentcast::html
