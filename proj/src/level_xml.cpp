#include "dlg/level_xml.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace dlg {
namespace {

struct XmlNode {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<XmlNode> children;
  int line = 0;
  int col = 0;
};

// Minimal XML subset reader: declaration, comments, attributes, nesting,
// self-closing tags. Text content is not part of the level format and is
// rejected unless whitespace.
class XmlReader {
 public:
  explicit XmlReader(const std::string& text) : text_(text) {}

  XmlNode parse_document() {
    skip_prolog();
    XmlNode root = parse_element();
    skip_misc();
    if (pos_ < text_.size()) fail("trailing content after root element");
    return root;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(std::to_string(line_) + ":" + std::to_string(col_) +
                     ": " + msg);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)peek())) advance();
  }

  bool consume(const std::string& s) {
    if (text_.compare(pos_, s.size(), s) != 0) return false;
    for (size_t i = 0; i < s.size(); i++) advance();
    return true;
  }

  void skip_comment() {
    while (pos_ < text_.size()) {
      if (consume("-->")) return;
      advance();
    }
    fail("unterminated comment");
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (consume("<!--"))
        skip_comment();
      else
        return;
    }
  }

  void skip_prolog() {
    skip_ws();
    if (consume("<?")) {
      while (pos_ < text_.size() && !consume("?>")) advance();
    }
    skip_misc();
  }

  std::string parse_name() {
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)peek()) || peek() == '_')) {
      name += advance();
    }
    if (name.empty()) fail("expected a name");
    return name;
  }

  XmlNode parse_element() {
    if (peek() != '<') fail("expected '<'");
    XmlNode node;
    node.line = line_;
    node.col = col_;
    advance();
    node.name = parse_name();
    for (;;) {
      skip_ws();
      if (consume("/>")) return node;
      if (consume(">")) break;
      std::string key = parse_name();
      skip_ws();
      if (!consume("=")) fail("expected '=' after attribute name");
      skip_ws();
      char quote = peek();
      if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
      advance();
      std::string value;
      while (pos_ < text_.size() && peek() != quote) value += advance();
      if (pos_ >= text_.size()) fail("unterminated attribute value");
      advance();
      if (!node.attrs.emplace(key, value).second)
        fail("duplicate attribute '" + key + "'");
    }
    // children until matching close tag
    for (;;) {
      skip_misc();
      if (pos_ >= text_.size()) fail("unterminated element <" + node.name + ">");
      if (consume("</")) {
        std::string close = parse_name();
        if (close != node.name)
          fail("mismatched close tag </" + close + "> for <" + node.name + ">");
        skip_ws();
        if (!consume(">")) fail("expected '>'");
        return node;
      }
      if (peek() == '<') {
        node.children.push_back(parse_element());
      } else {
        fail("unexpected text content in <" + node.name + ">");
      }
    }
  }
};

double require_float(const XmlNode& n, const std::string& key) {
  auto it = n.attrs.find(key);
  if (it == n.attrs.end())
    throw ParseError(std::to_string(n.line) + ":" + std::to_string(n.col) +
                     ": <" + n.name + "> missing attribute '" + key + "'");
  try {
    size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::to_string(n.line) + ":" + std::to_string(n.col) +
                     ": bad float '" + it->second + "' for '" + key + "'");
  }
}

double optional_float(const XmlNode& n, const std::string& key, double dflt) {
  return n.attrs.count(key) ? require_float(n, key) : dflt;
}

std::string require_attr(const XmlNode& n, const std::string& key) {
  auto it = n.attrs.find(key);
  if (it == n.attrs.end())
    throw ParseError(std::to_string(n.line) + ":" + std::to_string(n.col) +
                     ": <" + n.name + "> missing attribute '" + key + "'");
  return it->second;
}

[[noreturn]] void semantic(const XmlNode& n, const std::string& msg) {
  throw ModelError(std::to_string(n.line) + ":" + std::to_string(n.col) + ": " +
                   msg);
}

void check_known_attrs(const XmlNode& n,
                       std::initializer_list<const char*> known) {
  for (const auto& [key, value] : n.attrs) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return key == k;
        }) == known.end())
      semantic(n, "unknown attribute '" + key + "' on <" + n.name + ">");
  }
}

std::string format_float(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  std::string s = os.str();
  // trim trailing zeros, keep one decimal
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.')
    s.pop_back();
  return s;
}

}  // namespace

Level parse_level(const std::string& text, const Config& cfg, bool strict) {
  XmlNode root = XmlReader(text).parse_document();
  if (root.name != "Level") semantic(root, "root element must be <Level>");
  check_known_attrs(root, {});

  Level level;
  bool have_slingshot = false, have_birds = false, have_objects = false;
  int auto_id = 0;

  for (const XmlNode& child : root.children) {
    if (child.name == "Camera") {
      check_known_attrs(child, {"x", "y", "minWidth", "maxWidth"});
    } else if (child.name == "Birds") {
      have_birds = true;
      for (const XmlNode& b : child.children) {
        if (b.name != "Bird") semantic(b, "unknown element <" + b.name + ">");
        check_known_attrs(b, {"type"});
        auto type = bird_from_string(require_attr(b, "type"));
        if (!type) semantic(b, "unknown bird type '" + b.attrs.at("type") + "'");
        level.birds.push_back(*type);
      }
    } else if (child.name == "Slingshot") {
      check_known_attrs(child, {"x", "y"});
      level.slingshot = {require_float(child, "x"), require_float(child, "y")};
      have_slingshot = true;
    } else if (child.name == "GameObjects") {
      have_objects = true;
      for (const XmlNode& o : child.children) {
        GameObject obj;
        obj.position = {require_float(o, "x"), require_float(o, "y")};
        obj.rotation = optional_float(o, "rotation", 0.0);
        if (o.name == "Block") {
          check_known_attrs(o, {"type", "material", "x", "y", "rotation", "id"});
          obj.kind = ObjectKind::Block;
          obj.type = require_attr(o, "type");
          auto mat = material_from_string(require_attr(o, "material"));
          if (!mat)
            semantic(o, "unknown material '" + o.attrs.at("material") + "'");
          obj.material = *mat;
          obj.health = block_health(cfg, obj.type, obj.material);
        } else if (o.name == "Pig") {
          check_known_attrs(o, {"type", "x", "y", "rotation", "id"});
          obj.kind = ObjectKind::Pig;
          obj.type = require_attr(o, "type");
          obj.health = cfg.pig_health;
        } else if (o.name == "TNT") {
          check_known_attrs(o, {"x", "y", "rotation", "id"});
          obj.kind = ObjectKind::Tnt;
          obj.type = "TNT";
          obj.health = cfg.tnt_health;
        } else if (o.name == "Platform") {
          check_known_attrs(o,
                            {"type", "x", "y", "rotation", "scaleX", "scaleY",
                             "id"});
          obj.kind = ObjectKind::Platform;
          obj.type = "Platform";
        } else {
          semantic(o, "unknown element <" + o.name + ">");
        }
        auto entry = catalog_lookup(obj.kind, obj.type);
        if (!entry) semantic(o, "unknown " + o.name + " type '" + obj.type + "'");
        obj.width = entry->width;
        obj.height = entry->height;
        if (obj.kind == ObjectKind::Platform) {
          obj.width *= optional_float(o, "scaleX", 1.0);
          obj.height *= optional_float(o, "scaleY", 1.0);
        }
        if (obj.width <= 0 || obj.height <= 0)
          semantic(o, "non-positive object extent");
        obj.id = o.attrs.count("id") ? o.attrs.at("id")
                                     : "o" + std::to_string(auto_id);
        auto_id++;
        level.objects.push_back(obj);
      }
    } else {
      semantic(child, "unknown element <" + child.name + ">");
    }
  }

  if (strict) {
    if (!have_slingshot) throw ModelError("level has no <Slingshot>");
    if (!have_birds || level.birds.empty())
      throw ModelError("level has no birds");
    if (!have_objects) throw ModelError("level has no <GameObjects>");
    if (level_summary(level).pigs == 0) throw ModelError("level has no pigs");
  }
  for (size_t i = 0; i < level.objects.size(); i++)
    for (size_t j = i + 1; j < level.objects.size(); j++)
      if (level.objects[i].id == level.objects[j].id)
        throw ModelError("duplicate object id '" + level.objects[i].id + "'");
  for (const auto& o : level.objects)
    if (!level.bounds.overlaps(o.bounds()))
      throw ModelError("object '" + o.id + "' outside level bounds");
  return level;
}

std::string serialize_level(const Level& level) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<Level>\n";
  out << "  <Camera x=\"0\" y=\"0\" minWidth=\"20\" maxWidth=\"30\"/>\n";
  out << "  <Birds>\n";
  for (BirdType b : level.birds)
    out << "    <Bird type=\"" << to_string(b) << "\"/>\n";
  out << "  </Birds>\n";
  out << "  <Slingshot x=\"" << format_float(level.slingshot.x) << "\" y=\""
      << format_float(level.slingshot.y) << "\"/>\n";
  out << "  <GameObjects>\n";
  std::vector<const GameObject*> sorted;
  for (const auto& o : level.objects) sorted.push_back(&o);
  std::sort(sorted.begin(), sorted.end(),
            [](const GameObject* a, const GameObject* b) { return a->id < b->id; });
  for (const GameObject* o : sorted) {
    std::string common = " x=\"" + format_float(o->position.x) + "\" y=\"" +
                         format_float(o->position.y) + "\" rotation=\"" +
                         format_float(o->rotation) + "\" id=\"" + o->id + "\"";
    switch (o->kind) {
      case ObjectKind::Block:
        out << "    <Block type=\"" << o->type << "\" material=\""
            << to_string(o->material) << "\"" << common << "/>\n";
        break;
      case ObjectKind::Pig:
        out << "    <Pig type=\"" << o->type << "\"" << common << "/>\n";
        break;
      case ObjectKind::Tnt:
        out << "    <TNT" << common << "/>\n";
        break;
      case ObjectKind::Platform: {
        auto base = *catalog_lookup(ObjectKind::Platform, "Platform");
        out << "    <Platform type=\"Platform\"" << common << " scaleX=\""
            << format_float(o->width / base.width) << "\" scaleY=\""
            << format_float(o->height / base.height) << "\"/>\n";
        break;
      }
    }
  }
  out << "  </GameObjects>\n</Level>\n";
  return out.str();
}

}  // namespace dlg
