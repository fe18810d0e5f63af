#include "serialize.hpp"

#include <cstdio>
#include <regex>

namespace bt3::io {

namespace {

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string at_key(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(at_key(path, key), "missing");
  return *it;
}

void require_array(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n) throw ConfigError(path, "expected an array of " + std::to_string(n));
}

long integer_from(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long>();
}

}  // namespace

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("", "parse error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

std::string to_text(const Rational& x) { return x.get_str(); }

Rational rational_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw ConfigError(path, "expected a rational string \"num/den\"");
  static const std::regex form(R"(-?[0-9]+(/[0-9]+)?)");
  const std::string s = j.get<std::string>();
  if (!std::regex_match(s, form)) throw ConfigError(path, "malformed rational \"" + s + "\"");
  Rational x;
  auto slash = s.find('/');
  Integer num(s.substr(0, slash)), den = slash == std::string::npos ? Integer(1) : Integer(s.substr(slash + 1));
  if (den == 0) throw ConfigError(path, "zero denominator");
  x = Rational(num, den);
  x.canonicalize();
  return x;
}

json to_json(const Vec3& v) { return json::array({to_text(v[0]), to_text(v[1]), to_text(v[2])}); }

json to_json(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(json::array({to_text(m(r, 0)), to_text(m(r, 1)), to_text(m(r, 2))}));
  return rows;
}

json to_json(const WeylVector& w) { return json::array({w.a1, w.a2, w.a3}); }

json to_json(const Flag& c) { return {{"line", to_json(c.line())}, {"plane", to_json(c.plane_vector())}}; }

json to_json(const Frame& f) { return {{"lines", json::array({to_json(f.line(0)), to_json(f.line(1)), to_json(f.line(2))})}}; }

json to_json(const LatticeVertex& x) { return {{"p", x.prime().value()}, {"basis", to_json(x.basis())}}; }

json to_json(const GroupElement& g) { return {{"matrix", to_json(g.matrix)}, {"word", g.word}}; }

json to_json(const SrhCertificate& c) {
  return {{"element", to_json(c.element)},
          {"frame", to_json(c.frame)},
          {"lambda", to_json(c.lambda)},
          {"attracting", to_json(c.attracting)},
          {"repelling", to_json(c.repelling)}};
}

json to_json(const ResidueChamber& r) { return {{"p", r.p}, {"line", r.line}, {"plane", r.plane}}; }

json to_json(const IdealSimplex& s) {
  switch (s.kind) {
    case IdealSimplex::Kind::Line:
      return {{"kind", "line"}, {"line", to_json(s.line)}};
    case IdealSimplex::Kind::Plane:
      return {{"kind", "plane"}, {"normal", to_json(s.normal)}};
    case IdealSimplex::Kind::Chamber:
      break;
  }
  return {{"kind", "chamber"}, {"line", to_json(s.line)}, {"normal", to_json(s.normal)}};
}

Vec3 vec3_from(const json& j, const std::string& path) {
  require_array(j, 3, path);
  return {rational_from(j[0], at_index(path, 0)), rational_from(j[1], at_index(path, 1)), rational_from(j[2], at_index(path, 2))};
}

Mat3 mat3_from(const json& j, const std::string& path) {
  require_array(j, 3, path);
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r) {
    Vec3 row = vec3_from(j[r], at_index(path, r));
    for (int c = 0; c < 3; ++c) m(static_cast<int>(r), c) = row[c];
  }
  return m;
}

WeylVector weyl_vector_from(const json& j, const std::string& path) {
  require_array(j, 3, path);
  return {integer_from(j[0], at_index(path, 0)), integer_from(j[1], at_index(path, 1)), integer_from(j[2], at_index(path, 2))};
}

Flag flag_from(const json& j, const std::string& path) {
  Vec3 line = vec3_from(member(j, "line", path), at_key(path, "line"));
  Vec3 plane = vec3_from(member(j, "plane", path), at_key(path, "plane"));
  try {
    return Flag(line, plane);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Frame frame_from(const json& j, const std::string& path) {
  const json& lines = member(j, "lines", path);
  const std::string lp = at_key(path, "lines");
  require_array(lines, 3, lp);
  try {
    return Frame(vec3_from(lines[0], at_index(lp, 0)), vec3_from(lines[1], at_index(lp, 1)), vec3_from(lines[2], at_index(lp, 2)));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

LatticeVertex vertex_from(const json& j, const std::string& path) {
  long p = integer_from(member(j, "p", path), at_key(path, "p"));
  Mat3 b = mat3_from(member(j, "basis", path), at_key(path, "basis"));
  try {
    return LatticeVertex(b, Prime(p));
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

GroupElement group_element_from(const json& j, const std::string& path) {
  Mat3 m = mat3_from(member(j, "matrix", path), at_key(path, "matrix"));
  std::vector<int> word;
  if (j.contains("word")) {
    const json& w = j["word"];
    if (!w.is_array()) throw ConfigError(at_key(path, "word"), "expected an array");
    for (std::size_t i = 0; i < w.size(); ++i) word.push_back(static_cast<int>(integer_from(w[i], at_index(at_key(path, "word"), i))));
  }
  try {
    return GroupElement::make(m, word);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

SrhCertificate certificate_from(const json& j, const std::string& path) {
  return {group_element_from(member(j, "element", path), at_key(path, "element")),
          frame_from(member(j, "frame", path), at_key(path, "frame")),
          weyl_vector_from(member(j, "lambda", path), at_key(path, "lambda")),
          flag_from(member(j, "attracting", path), at_key(path, "attracting")),
          flag_from(member(j, "repelling", path), at_key(path, "repelling"))};
}

std::uint64_t config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bt3::io
