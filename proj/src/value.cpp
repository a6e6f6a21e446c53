#include "worldset/value.hpp"

#include <cctype>
#include <charconv>

namespace ws {

namespace {

bool parse_int(const std::string& s, long long& out) {
  if (s.empty() || s.size() > 18) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) return false;
  // Reject forms such as "007" or "-0" so that numeric equality implies text equality.
  return std::to_string(out) == s;
}

}  // namespace

int natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && a[i2] == '0') ++i2;
      while (j2 < b.size() && b[j2] == '0') ++j2;
      std::size_t ie = i2, je = j2;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      if (ie - i2 != je - j2) return ie - i2 < je - j2 ? -1 : 1;
      int c = a.substr(i2, ie - i2).compare(b.substr(j2, je - j2));
      if (c != 0) return c < 0 ? -1 : 1;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

Value Value::constant(std::string text) {
  Value v;
  v.kind_ = Kind::kConstant;
  v.numeric_ = parse_int(text, v.num_);
  v.text_ = std::move(text);
  return v;
}

Value Value::variable(std::string name) {
  Value v;
  v.kind_ = Kind::kVariable;
  v.text_ = std::move(name);
  return v;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::kVariable:
      return "?" + text_;
    case Kind::kConstant:
      return text_;
    case Kind::kBottom:
      break;
  }
  return "_|_";
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ == Value::Kind::kConstant) {
    if (a.numeric_ && b.numeric_) return a.num_ <=> b.num_;
    if (a.numeric_ != b.numeric_) return a.numeric_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  int c = natural_compare(a.text_, b.text_);
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.text_ <=> b.text_;
}

std::string tuple_str(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += t[i].str();
  }
  return out + ")";
}

std::vector<std::string> AttrName::parts() const {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t dot = text_.find('.', start);
    out.push_back(text_.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return out;
}

std::string schema_str(const Schema& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i].str();
  }
  return out + ")";
}

}  // namespace ws
