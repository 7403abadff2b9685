#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace uavbeam::detail {

/// Maps JSON-pointer paths ("/sectors/2/id") to the 1-based line where the
/// value starts. Structural scan only; syntax errors are left to the real parser.
class JsonLineIndex {
 public:
  explicit JsonLineIndex(std::string_view text);

  /// Line of `path`, falling back to the nearest indexed ancestor, or 0.
  std::size_t line_of(std::string path) const;

 private:
  void value(const std::string& path);
  void skip_ws();
  std::string string_token();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace uavbeam::detail
