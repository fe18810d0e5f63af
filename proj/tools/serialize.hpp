#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bt3/appendix.hpp"
#include "bt3/dynamics.hpp"

namespace bt3::io {

using json = nlohmann::json;

/// Bad configuration or serialized value; `field` is a JSON path such as "generators[1][0][2]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses JSON text; syntax errors are reported as "line L, column C".
json parse_document(const std::string& text);

/// "num/den" or "num", canonical.
std::string to_text(const Rational& x);
Rational rational_from(const json& j, const std::string& path);

json to_json(const Vec3& v);
json to_json(const Mat3& m);  // rows of rational strings
json to_json(const WeylVector& w);
json to_json(const Flag& c);
json to_json(const Frame& f);
json to_json(const LatticeVertex& x);
json to_json(const GroupElement& g);
json to_json(const SrhCertificate& c);
json to_json(const ResidueChamber& r);
json to_json(const IdealSimplex& s);

Vec3 vec3_from(const json& j, const std::string& path);
Mat3 mat3_from(const json& j, const std::string& path);
WeylVector weyl_vector_from(const json& j, const std::string& path);
Flag flag_from(const json& j, const std::string& path);
Frame frame_from(const json& j, const std::string& path);
LatticeVertex vertex_from(const json& j, const std::string& path);
GroupElement group_element_from(const json& j, const std::string& path);
SrhCertificate certificate_from(const json& j, const std::string& path);

/// 64-bit FNV-1a of the compact dump (object keys sorted).
std::uint64_t config_hash(const json& config);
std::string hex(std::uint64_t h);

}  // namespace bt3::io
