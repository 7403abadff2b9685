#include "json_lines.hpp"

namespace uavbeam::detail {

JsonLineIndex::JsonLineIndex(std::string_view text) : text_(text) {
  skip_ws();
  if (pos_ < text_.size()) value("");
}

std::size_t JsonLineIndex::line_of(std::string path) const {
  while (true) {
    auto it = lines_.find(path);
    if (it != lines_.end()) return it->second;
    if (path.empty()) return 0;
    path.erase(path.rfind('/'));
  }
}

void JsonLineIndex::skip_ws() {
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (c == '\n') {
      ++line_;
    } else if (c != ' ' && c != '\t' && c != '\r') {
      return;
    }
    ++pos_;
  }
}

std::string JsonLineIndex::string_token() {
  std::string out;
  ++pos_;  // opening quote
  while (pos_ < text_.size() && text_[pos_] != '"') {
    if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
    if (text_[pos_] == '\n') ++line_;
    out.push_back(text_[pos_++]);
  }
  ++pos_;  // closing quote
  return out;
}

void JsonLineIndex::value(const std::string& path) {
  lines_.emplace(path, line_);
  if (pos_ >= text_.size()) return;
  const char c = text_[pos_];
  if (c == '{') {
    ++pos_;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) return;
      if (text_[pos_] == '}') {
        ++pos_;
        return;
      }
      if (text_[pos_] != '"') return;
      const std::string key = string_token();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ':') return;
      ++pos_;
      skip_ws();
      value(path + "/" + key);
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
    }
  } else if (c == '[') {
    ++pos_;
    std::size_t index = 0;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) return;
      if (text_[pos_] == ']') {
        ++pos_;
        return;
      }
      value(path + "/" + std::to_string(index++));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
    }
  } else if (c == '"') {
    string_token();
  } else {
    while (pos_ < text_.size()) {
      const char s = text_[pos_];
      if (s == ',' || s == ']' || s == '}' || s == ' ' || s == '\n' || s == '\t' || s == '\r') break;
      ++pos_;
    }
  }
}

}  // namespace uavbeam::detail
