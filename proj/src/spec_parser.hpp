#pragma once

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace embedlab::detail {

// Minimal cursor for the norm/Besov spec grammars.
class Cursor {
 public:
  explicit Cursor(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) buf_.push_back(c);
  }

  bool done() const { return pos_ >= buf_.size(); }
  char peek() const { return done() ? '\0' : buf_[pos_]; }

  bool accept(std::string_view token) {
    if (buf_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  // Optional "key=" prefix followed by a number.
  double number(std::initializer_list<std::string_view> keys = {}) {
    for (auto k : keys) {
      std::string tok(k);
      tok += '=';
      if (accept(tok)) break;
    }
    double v = 0.0;
    const char* first = buf_.data() + pos_;
    const char* last = buf_.data() + buf_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  int axis() {
    expect("k=");
    const double v = number();
    if (v != static_cast<int>(v) || v < 1) fail("axis must be a positive integer");
    return static_cast<int>(v) - 1;
  }

  std::string identifier() {
    std::string id;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) id.push_back(buf_[pos_++]);
    return id;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("spec parse error at position " + std::to_string(pos_) + " in '" + buf_ + "': " + what);
  }

 private:
  std::string buf_;
  std::size_t pos_ = 0;
};

}  // namespace embedlab::detail
