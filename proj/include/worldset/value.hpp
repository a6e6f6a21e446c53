#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ws {

// Orders strings so that embedded digit runs compare numerically ("d2" < "d10").
int natural_compare(std::string_view a, std::string_view b);

// A cell value: a domain constant, a variable, or the bottom marker.
// Ordering is variable < constant < bottom; constants that look like integers
// compare numerically and sort before non-numeric constants.
class Value {
 public:
  enum class Kind : std::uint8_t { kVariable = 0, kConstant = 1, kBottom = 2 };

  Value() : kind_(Kind::kBottom) {}

  static Value constant(std::string text);
  static Value constant(long long n) { return constant(std::to_string(n)); }
  static Value variable(std::string name);
  static Value bottom() { return Value(); }

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::kConstant; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_bottom() const { return kind_ == Kind::kBottom; }

  // Constant text or variable name; empty for bottom.
  const std::string& text() const { return text_; }

  // Display form: constants as-is, variables as ?name, bottom as _|_.
  std::string str() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.kind_ == b.kind_ && a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Kind kind_;
  bool numeric_ = false;
  long long num_ = 0;
  std::string text_;
};

using Tuple = std::vector<Value>;

std::string tuple_str(const Tuple& t);

// Qualified attribute name such as "R.d1.A"; parts are dot separated.
class AttrName {
 public:
  AttrName() = default;
  AttrName(std::string text) : text_(std::move(text)) {}  // NOLINT
  AttrName(const char* text) : text_(text) {}             // NOLINT

  const std::string& str() const { return text_; }
  std::vector<std::string> parts() const;

  friend bool operator==(const AttrName& a, const AttrName& b) = default;
  friend std::strong_ordering operator<=>(const AttrName& a, const AttrName& b) {
    int c = natural_compare(a.text_, b.text_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.text_ <=> b.text_;
  }

 private:
  std::string text_;
};

using Schema = std::vector<AttrName>;

std::string schema_str(const Schema& s);

}  // namespace ws

template <>
struct std::hash<ws::Value> {
  std::size_t operator()(const ws::Value& v) const noexcept {
    return std::hash<std::string>()(v.text()) * 3 + static_cast<std::size_t>(v.kind());
  }
};
