#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "json_lines.hpp"
#include "uavbeam/errors.hpp"

namespace uavbeam::detail {

/// Typed access to a parsed JSON document. Every failure raises ParseError
/// naming the source, line and dotted field path.
class JsonDocument {
 public:
  JsonDocument(std::string_view text, std::string source) : source_(std::move(source)), index_(text) {
    try {
      root_ = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source_ + ": invalid JSON: " + e.what());
    }
  }

  const nlohmann::json& root() const { return root_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    throw ParseError(source_ + ":" + std::to_string(index_.line_of(pointer)) + ": field '" +
                     dotted(pointer) + "': " + what);
  }

  const nlohmann::json* find(const nlohmann::json& obj, const std::string& key) const {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  double number(const nlohmann::json& obj, const std::string& pointer, const std::string& key) const {
    const auto* v = find(obj, key);
    if (!v) fail(pointer + "/" + key, "missing required number");
    return as_number(*v, pointer + "/" + key);
  }

  double number_or(const nlohmann::json& obj, const std::string& pointer, const std::string& key,
                   double fallback) const {
    const auto* v = find(obj, key);
    return v ? as_number(*v, pointer + "/" + key) : fallback;
  }

  std::optional<double> optional_number(const nlohmann::json& obj, const std::string& pointer,
                                        const std::string& key) const {
    const auto* v = find(obj, key);
    if (!v || v->is_null()) return std::nullopt;
    return as_number(*v, pointer + "/" + key);
  }

  long long integer(const nlohmann::json& obj, const std::string& pointer, const std::string& key) const {
    const auto* v = find(obj, key);
    if (!v) fail(pointer + "/" + key, "missing required integer");
    return as_integer(*v, pointer + "/" + key);
  }

  long long integer_or(const nlohmann::json& obj, const std::string& pointer, const std::string& key,
                       long long fallback) const {
    const auto* v = find(obj, key);
    return v ? as_integer(*v, pointer + "/" + key) : fallback;
  }

  std::string string_or(const nlohmann::json& obj, const std::string& pointer, const std::string& key,
                        const std::string& fallback) const {
    const auto* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(pointer + "/" + key, "expected a string");
    return v->get<std::string>();
  }

  bool boolean_or(const nlohmann::json& obj, const std::string& pointer, const std::string& key,
                  bool fallback) const {
    const auto* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(pointer + "/" + key, "expected true or false");
    return v->get<bool>();
  }

  double as_number(const nlohmann::json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    return v.get<double>();
  }

  long long as_integer(const nlohmann::json& v, const std::string& pointer) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    return v.get<long long>();
  }

  void require_object(const nlohmann::json& v, const std::string& pointer) const {
    if (!v.is_object()) fail(pointer, "expected an object");
  }

  /// Rejects keys outside `allowed`, catching typos in hand-written files.
  void check_keys(const nlohmann::json& obj, const std::string& pointer,
                  std::initializer_list<std::string_view> allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (auto a : allowed) ok = ok || it.key() == a;
      if (!ok) fail(pointer + "/" + it.key(), "unknown key");
    }
  }

  static std::string dotted(const std::string& pointer) {
    std::string out;
    std::size_t i = 0;
    while (i < pointer.size()) {
      const std::size_t next = pointer.find('/', i + 1);
      const std::string part = pointer.substr(i + 1, next == std::string::npos ? std::string::npos : next - i - 1);
      const bool index = !part.empty() && part.find_first_not_of("0123456789") == std::string::npos;
      if (index) {
        out += "[" + part + "]";
      } else {
        if (!out.empty()) out += ".";
        out += part;
      }
      if (next == std::string::npos) break;
      i = next;
    }
    return out.empty() ? "<root>" : out;
  }

 private:
  std::string source_;
  JsonLineIndex index_;
  nlohmann::json root_;
};

}  // namespace uavbeam::detail
