#pragma once
// Strict wrapper over nlohmann::json objects: required fields, type checks,
// and rejection of unknown fields, all reporting the offending field by name.
#include <set>
#include <string>

#include <json.hpp>

#include "vlcsim/errors.hpp"

namespace vlcsim {

using Json = nlohmann::json;

Json parse_json_file(const std::string& path);          // IoError / ConfigError
Json parse_json_text(const std::string& text, const std::string& context);

class JsonObject {
 public:
  JsonObject(const Json& j, std::string context);

  bool has(const std::string& name) const;

  double number(const std::string& name);
  double number_or(const std::string& name, double def);
  int64_t integer(const std::string& name);
  int64_t integer_or(const std::string& name, int64_t def);
  uint64_t uinteger(const std::string& name);
  uint64_t uinteger_or(const std::string& name, uint64_t def);
  bool boolean(const std::string& name);
  bool boolean_or(const std::string& name, bool def);
  std::string text(const std::string& name);
  std::string text_or(const std::string& name, const std::string& def);
  const Json& array(const std::string& name);
  const Json* array_or_null(const std::string& name);
  const Json& object(const std::string& name);
  const Json* object_or_null(const std::string& name);

  // Throws ConfigError naming any field that was present but never read.
  void finish() const;

  const std::string& context() const { return ctx_; }

 private:
  const Json& require(const std::string& name, const char* type_name);
  const Json* optional(const std::string& name);
  [[noreturn]] void type_error(const std::string& name, const char* type_name) const;

  const Json& j_;
  std::string ctx_;
  std::set<std::string> seen_;
};

}  // namespace vlcsim
