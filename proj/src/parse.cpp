#include "kneser/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include "kneser/error.hpp"
#include "kneser/quotient.hpp"

namespace kneser {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc::result_out_of_range) fail("integer out of range");
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    std::string shown(text_);
    throw Error(ErrorKind::Parse, "at position " + std::to_string(pos_ + 1) + " of \"" + shown + "\": " + message);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// A tuple "(x,...)" or a bare integer.
std::vector<std::int64_t> parse_element(Cursor& cur) {
  std::vector<std::int64_t> coords;
  if (cur.accept('(')) {
    do {
      coords.push_back(cur.integer());
    } while (cur.accept(','));
    cur.expect(')');
  } else {
    coords.push_back(cur.integer());
  }
  return coords;
}

template <typename Fn>
void parse_braced_list(Cursor& cur, Fn&& on_element) {
  cur.expect('{');
  if (cur.accept('}')) return;
  do {
    on_element(cur);
  } while (cur.accept(','));
  cur.expect('}');
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  Cursor cur(text);
  GroupSpec spec;
  auto take_z = [&] {
    const char c = cur.peek();
    if (c != 'Z' && c != 'z') cur.fail("expected 'Z'");
    cur.accept(c);
  };
  take_z();
  const char next = cur.peek();
  if (cur.done() && spec.factors.empty()) {
    spec.integers = true;
    return spec;
  }
  if (!std::isdigit(static_cast<unsigned char>(next)) && next != '-') cur.fail("expected a factor order");
  spec.factors.push_back(cur.integer());
  while (cur.accept('x') || cur.accept('X')) {
    take_z();
    spec.factors.push_back(cur.integer());
  }
  while (cur.accept('/')) {
    if (cur.peek() != '{') cur.fail("expected '{' after '/'");
    const std::size_t open = cur.pos();
    parse_braced_list(cur, [](Cursor& c) { (void)parse_element(c); });
    spec.kernels.emplace_back(text.substr(open, cur.pos() - open));
  }
  if (!cur.done()) cur.fail("unexpected trailing text");
  return spec;
}

FinAbGroup build_group(const GroupSpec& spec, std::size_t order_cap) {
  if (spec.integers) {
    throw Error(ErrorKind::InvalidArgument, "the integer group Z is handled by embedding, not directly");
  }
  FinAbGroup g = FinAbGroup::make(spec.factors, order_cap);
  for (const std::string& kernel : spec.kernels) {
    g = QuotientMap(g, Subgroup(parse_set(kernel, g))).quotient();
  }
  return g;
}

FinAbGroup parse_group(std::string_view text, std::size_t order_cap) {
  return build_group(parse_group_spec(text), order_cap);
}

GSet parse_set(std::string_view text, const FinAbGroup& group) {
  Cursor cur(text);
  std::vector<GroupElem> elems;
  parse_braced_list(cur, [&](Cursor& c) {
    const std::size_t at = c.pos();
    const std::vector<std::int64_t> raw = parse_element(c);
    if (raw.size() != group.width()) {
      throw Error(ErrorKind::Parse, "at position " + std::to_string(at + 1) + ": element has " +
                                        std::to_string(raw.size()) + " coordinates, " + group.spec() +
                                        " needs " + std::to_string(group.width()));
    }
    GroupElem e;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] < 0 || raw[i] >= group.base_factors()[i]) {
        throw Error(ErrorKind::DomainMismatch, "at position " + std::to_string(at + 1) + ": element " +
                                                   std::to_string(raw[i]) + " out of range for " +
                                                   group.spec());
      }
      e.coords.push_back(static_cast<std::uint32_t>(raw[i]));
    }
    if (!group.contains(e)) {
      throw Error(ErrorKind::DomainMismatch, "at position " + std::to_string(at + 1) + ": " +
                                                 group.format(e) + " is not a canonical element of " +
                                                 group.spec());
    }
    elems.push_back(std::move(e));
  });
  if (!cur.done()) cur.fail("unexpected trailing text");
  return GSet::from_elems(group, elems);
}

std::vector<std::int64_t> parse_integer_set(std::string_view text) {
  Cursor cur(text);
  std::vector<std::int64_t> values;
  parse_braced_list(cur, [&](Cursor& c) { values.push_back(c.integer()); });
  if (!cur.done()) cur.fail("unexpected trailing text");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::string format_integer_set(const std::vector<std::int64_t>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out + '}';
}

}  // namespace kneser
