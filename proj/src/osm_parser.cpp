#include "orientsel/osm_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include "orientsel/errors.hpp"
#include "orientsel/log.hpp"

namespace orientsel {

namespace {

struct XmlTag {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  bool closing = false;
  bool self_closing = false;
  int line = 1;

  const std::string* attr(const std::string& key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '.';
}

// Minimal tag-level scanner for the OSM XML subset. Text between tags is
// ignored; comments, declarations and DOCTYPE blocks are skipped.
class XmlScanner {
 public:
  explicit XmlScanner(const std::string& text) : text_(text) {}

  std::optional<XmlTag> next() {
    while (true) {
      skip_until('<');
      if (eof()) return std::nullopt;
      if (match("<!--")) {
        skip_past("-->", "unterminated comment");
        continue;
      }
      if (match("<?")) {
        skip_past("?>", "unterminated declaration");
        continue;
      }
      if (peek_at(1) == '!') {
        skip_past(">", "unterminated markup declaration");
        continue;
      }
      return read_tag();
    }
  }

  int line() const { return line_; }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  bool match(const char* lit) {
    const std::size_t n = std::strlen(lit);
    if (text_.compare(pos_, n, lit) != 0) return false;
    for (std::size_t i = 0; i < n; ++i) advance();
    return true;
  }

  void skip_until(char c) {
    while (!eof() && peek() != c) advance();
  }

  void skip_past(const char* lit, const char* err) {
    const std::size_t found = text_.find(lit, pos_);
    if (found == std::string::npos) throw OsmParseError(err, line_);
    while (pos_ < found + std::strlen(lit)) advance();
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  std::string read_name() {
    std::string name;
    while (!eof() && is_name_char(peek())) name += advance();
    if (name.empty()) throw OsmParseError("expected element name", line_);
    return name;
  }

  std::string read_attr_value() {
    const char quote = peek();
    if (quote != '"' && quote != '\'') throw OsmParseError("expected quoted attribute value", line_);
    advance();
    std::string raw;
    while (!eof() && peek() != quote) raw += advance();
    if (eof()) throw OsmParseError("unterminated attribute value", line_);
    advance();
    return decode_entities(raw);
  }

  std::string decode_entities(const std::string& raw) {
    if (raw.find('&') == std::string::npos) return raw;
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      const std::size_t end = raw.find(';', i);
      if (end == std::string::npos) throw OsmParseError("unterminated entity reference", line_);
      const std::string ent = raw.substr(i + 1, end - i - 1);
      if (ent == "amp") out += '&';
      else if (ent == "lt") out += '<';
      else if (ent == "gt") out += '>';
      else if (ent == "quot") out += '"';
      else if (ent == "apos") out += '\'';
      else if (!ent.empty() && ent[0] == '#') {
        const bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
        char* done = nullptr;
        const long code = std::strtol(ent.c_str() + (hex ? 2 : 1), &done, hex ? 16 : 10);
        if (done == nullptr || *done != '\0' || code <= 0 || code > 0x10FFFF)
          throw OsmParseError("invalid character reference '&" + ent + ";'", line_);
        append_utf8(out, static_cast<unsigned>(code));
      } else {
        throw OsmParseError("unknown entity '&" + ent + ";'", line_);
      }
      i = end;
    }
    return out;
  }

  static void append_utf8(std::string& out, unsigned code) {
    if (code < 0x80) {
      out += static_cast<char>(code);
    } else if (code < 0x800) {
      out += static_cast<char>(0xC0 | (code >> 6));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else if (code < 0x10000) {
      out += static_cast<char>(0xE0 | (code >> 12));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (code >> 18));
      out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    }
  }

  XmlTag read_tag() {
    XmlTag tag;
    tag.line = line_;
    advance();  // consume '<'
    if (peek() == '/') {
      advance();
      tag.closing = true;
      tag.name = read_name();
      skip_ws();
      if (peek() != '>') throw OsmParseError("malformed closing tag </" + tag.name + ">", line_);
      advance();
      return tag;
    }
    tag.name = read_name();
    while (true) {
      skip_ws();
      if (eof()) throw OsmParseError("unexpected end of input inside <" + tag.name + ">", line_);
      if (peek() == '>') {
        advance();
        return tag;
      }
      if (peek() == '/') {
        advance();
        if (peek() != '>') throw OsmParseError("malformed self-closing tag", line_);
        advance();
        tag.self_closing = true;
        return tag;
      }
      const std::string key = read_name();
      skip_ws();
      if (peek() != '=') throw OsmParseError("expected '=' after attribute '" + key + "'", line_);
      advance();
      skip_ws();
      tag.attrs.emplace_back(key, read_attr_value());
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

long long parse_ll(const XmlTag& tag, const std::string& key) {
  const std::string* raw = tag.attr(key);
  if (raw == nullptr)
    throw OsmParseError("<" + tag.name + "> missing attribute '" + key + "'", tag.line);
  char* done = nullptr;
  const long long v = std::strtoll(raw->c_str(), &done, 10);
  if (done == raw->c_str() || *done != '\0')
    throw OsmParseError("invalid integer '" + *raw + "' for '" + key + "'", tag.line);
  return v;
}

double parse_dbl(const XmlTag& tag, const std::string& key) {
  const std::string* raw = tag.attr(key);
  if (raw == nullptr)
    throw OsmParseError("<" + tag.name + "> missing attribute '" + key + "'", tag.line);
  char* done = nullptr;
  const double v = std::strtod(raw->c_str(), &done);
  if (done == raw->c_str() || *done != '\0')
    throw OsmParseError("invalid number '" + *raw + "' for '" + key + "'", tag.line);
  return v;
}

using TagMap = std::map<std::string, std::string>;

struct RawNode {
  long long id = 0;
  GeoPoint loc;
  TagMap tags;
};

struct RawWay {
  long long id = 0;
  std::vector<long long> refs;
  TagMap tags;
};

struct RawMember {
  std::string type;
  long long ref = 0;
  std::string role;
};

struct RawRelation {
  long long id = 0;
  std::vector<RawMember> members;
  TagMap tags;
};

struct Document {
  std::vector<RawNode> nodes;
  std::vector<RawWay> ways;
  std::vector<RawRelation> relations;
};

Document scan_document(const std::string& text) {
  Document doc;
  XmlScanner scanner(text);
  std::vector<std::string> open;
  RawNode* cur_node = nullptr;
  RawWay* cur_way = nullptr;
  RawRelation* cur_rel = nullptr;

  const auto parent_entity = [&]() -> const char* {
    if (cur_node) return "node";
    if (cur_way) return "way";
    if (cur_rel) return "relation";
    return nullptr;
  };

  while (auto maybe = scanner.next()) {
    XmlTag& tag = *maybe;
    if (tag.closing) {
      if (open.empty() || open.back() != tag.name)
        throw OsmParseError("unexpected closing tag </" + tag.name + ">", tag.line);
      open.pop_back();
      if (tag.name == "node") cur_node = nullptr;
      else if (tag.name == "way") cur_way = nullptr;
      else if (tag.name == "relation") cur_rel = nullptr;
      continue;
    }

    if (tag.name == "node") {
      if (parent_entity())
        throw OsmParseError("<node> nested inside <" + std::string(parent_entity()) + ">", tag.line);
      RawNode n;
      n.id = parse_ll(tag, "id");
      n.loc = {parse_dbl(tag, "lon"), parse_dbl(tag, "lat")};
      doc.nodes.push_back(std::move(n));
      if (!tag.self_closing) {
        open.push_back(tag.name);
        cur_node = &doc.nodes.back();
      }
    } else if (tag.name == "way") {
      if (parent_entity())
        throw OsmParseError("<way> nested inside <" + std::string(parent_entity()) + ">", tag.line);
      RawWay w;
      w.id = parse_ll(tag, "id");
      doc.ways.push_back(std::move(w));
      if (!tag.self_closing) {
        open.push_back(tag.name);
        cur_way = &doc.ways.back();
      }
    } else if (tag.name == "relation") {
      if (parent_entity())
        throw OsmParseError("<relation> nested inside <" + std::string(parent_entity()) + ">",
                            tag.line);
      RawRelation r;
      r.id = parse_ll(tag, "id");
      doc.relations.push_back(std::move(r));
      if (!tag.self_closing) {
        open.push_back(tag.name);
        cur_rel = &doc.relations.back();
      }
    } else if (tag.name == "tag") {
      const std::string* k = tag.attr("k");
      const std::string* v = tag.attr("v");
      if (k == nullptr || v == nullptr)
        throw OsmParseError("<tag> requires attributes 'k' and 'v'", tag.line);
      if (cur_node) cur_node->tags[*k] = *v;
      else if (cur_way) cur_way->tags[*k] = *v;
      else if (cur_rel) cur_rel->tags[*k] = *v;
      else throw OsmParseError("<tag> outside of node/way/relation", tag.line);
      if (!tag.self_closing) open.push_back(tag.name);
    } else if (tag.name == "nd") {
      if (cur_way == nullptr) throw OsmParseError("<nd> outside of <way>", tag.line);
      cur_way->refs.push_back(parse_ll(tag, "ref"));
      if (!tag.self_closing) open.push_back(tag.name);
    } else if (tag.name == "member") {
      if (cur_rel == nullptr) throw OsmParseError("<member> outside of <relation>", tag.line);
      RawMember m;
      const std::string* type = tag.attr("type");
      m.type = type ? *type : "";
      m.ref = parse_ll(tag, "ref");
      const std::string* role = tag.attr("role");
      m.role = role ? *role : "";
      cur_rel->members.push_back(std::move(m));
      if (!tag.self_closing) open.push_back(tag.name);
    } else {
      // osm root, bounds, and anything else we do not interpret.
      if (!tag.self_closing) open.push_back(tag.name);
    }
  }

  if (!open.empty())
    throw OsmParseError("unclosed element <" + open.back() + "> at end of input", scanner.line());
  return doc;
}

bool is_closed_ring(const std::vector<long long>& refs) {
  return refs.size() >= 4 && refs.front() == refs.back();
}

// Joins way fragments into closed rings by matching endpoints. Returns the
// rings as node-ref sequences; open leftovers are reported via `stuck`.
std::vector<std::vector<long long>> stitch_rings(std::vector<std::vector<long long>> parts,
                                                 bool& stuck) {
  std::vector<std::vector<long long>> rings;
  stuck = false;
  while (!parts.empty()) {
    std::vector<long long> cur = std::move(parts.front());
    parts.erase(parts.begin());
    bool progress = true;
    while (!is_closed_ring(cur) && progress) {
      progress = false;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<long long>& p = parts[i];
        if (p.empty()) continue;
        if (p.front() == cur.back()) {
          cur.insert(cur.end(), p.begin() + 1, p.end());
        } else if (p.back() == cur.back()) {
          cur.insert(cur.end(), p.rbegin() + 1, p.rend());
        } else if (p.back() == cur.front()) {
          cur.insert(cur.begin(), p.begin(), p.end() - 1);
        } else if (p.front() == cur.front()) {
          cur.insert(cur.begin(), p.rbegin(), p.rend() - 1);
        } else {
          continue;
        }
        parts.erase(parts.begin() + i);
        progress = true;
        break;
      }
    }
    if (is_closed_ring(cur)) rings.push_back(std::move(cur));
    else stuck = true;
  }
  return rings;
}

// Shoelace area in degree space; only used to pick the largest ring of one
// relation, so the latitude distortion cancels out.
double ring_area_deg(const std::vector<GeoPoint>& ring) {
  double acc = 0.0;
  for (std::size_t i = 1; i < ring.size(); ++i)
    acc += ring[i - 1].lon * ring[i].lat - ring[i].lon * ring[i - 1].lat;
  return std::fabs(acc) / 2.0;
}

}  // namespace

ParsedOsm parse_osm(const std::string& xml_text) {
  const Document doc = scan_document(xml_text);
  ParsedOsm out;

  for (const auto& n : doc.nodes) out.node_locations[n.id] = n.loc;

  const auto resolve = [&](const std::vector<long long>& refs,
                           std::vector<GeoPoint>& pts) -> std::optional<long long> {
    pts.clear();
    pts.reserve(refs.size());
    for (const long long ref : refs) {
      const auto it = out.node_locations.find(ref);
      if (it == out.node_locations.end()) return ref;
      pts.push_back(it->second);
    }
    return std::nullopt;
  };

  for (const auto& n : doc.nodes) {
    if (n.tags.empty()) continue;
    RawFeature f;
    f.id = "node/" + std::to_string(n.id);
    f.tags = n.tags;
    f.geometry = GeoGeometry::point(n.loc);
    out.features.push_back(std::move(f));
  }

  std::map<long long, const RawWay*> ways_by_id;
  for (const auto& w : doc.ways) ways_by_id[w.id] = &w;

  for (const auto& w : doc.ways) {
    const auto hw = w.tags.find("highway");

    if (hw != w.tags.end()) {
      std::vector<GeoPoint> pts;
      if (const auto missing = resolve(w.refs, pts)) {
        out.warnings.push_back("way " + std::to_string(w.id) + " references missing node " +
                               std::to_string(*missing) + "; skipped");
        continue;
      }
      GraphWay gw;
      gw.id = w.id;
      gw.node_refs = w.refs;
      gw.highway = hw->second;
      const auto junction = w.tags.find("junction");
      gw.roundabout = junction != w.tags.end() && junction->second == "roundabout";
      out.graph_ways.push_back(std::move(gw));
    }

    // A bare street way is graph input only; anything with further tags is
    // also a feature in its own right.
    if (w.tags.empty() || (hw != w.tags.end() && w.tags.size() == 1)) continue;

    std::vector<GeoPoint> pts;
    if (const auto missing = resolve(w.refs, pts)) {
      if (hw == w.tags.end()) {
        out.warnings.push_back("way " + std::to_string(w.id) + " references missing node " +
                               std::to_string(*missing) + "; skipped");
      }
      continue;
    }
    if (pts.empty()) continue;
    RawFeature f;
    f.id = "way/" + std::to_string(w.id);
    f.tags = w.tags;
    if (is_closed_ring(w.refs)) f.geometry = GeoGeometry::polygon(std::move(pts));
    else f.geometry = GeoGeometry::line(std::move(pts));
    out.features.push_back(std::move(f));
  }

  for (const auto& r : doc.relations) {
    const auto type = r.tags.find("type");
    if (type == r.tags.end() || (type->second != "boundary" && type->second != "multipolygon"))
      continue;

    std::vector<std::vector<long long>> parts;
    for (const auto& m : r.members) {
      if (m.type != "way") continue;
      if (!m.role.empty() && m.role != "outer") continue;
      const auto it = ways_by_id.find(m.ref);
      if (it == ways_by_id.end()) {
        out.warnings.push_back("relation " + std::to_string(r.id) + " references missing way " +
                               std::to_string(m.ref));
        continue;
      }
      if (!it->second->refs.empty()) parts.push_back(it->second->refs);
    }

    bool stuck = false;
    const auto rings = stitch_rings(std::move(parts), stuck);
    if (stuck) {
      out.warnings.push_back("relation " + std::to_string(r.id) +
                             " has outer ways that do not close into a ring");
    }

    // Keep the largest closed outer ring; holes and islands are out of scope.
    std::vector<GeoPoint> best;
    double best_area = -1.0;
    for (const auto& ring : rings) {
      std::vector<GeoPoint> pts;
      if (const auto missing = resolve(ring, pts)) {
        out.warnings.push_back("relation " + std::to_string(r.id) +
                               " references missing node " + std::to_string(*missing));
        continue;
      }
      const double area = ring_area_deg(pts);
      if (area > best_area) {
        best_area = area;
        best = std::move(pts);
      }
    }
    if (best.empty()) {
      out.warnings.push_back("relation " + std::to_string(r.id) + " yields no usable ring; skipped");
      continue;
    }
    RawFeature f;
    f.id = "relation/" + std::to_string(r.id);
    f.tags = r.tags;
    f.geometry = GeoGeometry::polygon(std::move(best));
    out.features.push_back(std::move(f));
  }

  for (const auto& w : out.warnings) log_warn(w);
  return out;
}

ParsedOsm load_osm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open OSM file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_osm(buf.str());
}

}  // namespace orientsel
