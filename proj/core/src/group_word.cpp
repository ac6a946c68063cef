#include "treeauto/group_word.hpp"

#include <cctype>
#include <charconv>

#include "treeauto/error.hpp"

namespace treeauto {

GroupWord::GroupWord(std::vector<GroupLetter> letters) {
  letters_.reserve(letters.size());
  for (auto& l : letters) {
    if (!letters_.empty() && letters_.back() == l.inverted())
      letters_.pop_back();
    else
      letters_.push_back(std::move(l));
  }
}

GroupWord GroupWord::parse(std::string_view text) {
  std::vector<GroupLetter> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.'; };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    const std::string_view token = text.substr(i, j - i);
    i = j;
    const auto caret = token.find('^');
    const std::string_view name = token.substr(0, caret);
    long exponent = 1;
    if (caret != std::string_view::npos) {
      const std::string_view e = token.substr(caret + 1);
      const auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
      if (ec != std::errc{} || ptr != e.data() + e.size())
        throw Error("bad exponent in word token '" + std::string(token) + "'");
    }
    if (name.empty()) throw Error("empty generator name in word '" + std::string(text) + "'");
    if (name == "1" || name == "e") continue;
    const GroupLetter letter{std::string(name), exponent < 0};
    for (long n = exponent < 0 ? -exponent : exponent; n > 0; --n) out.push_back(letter);
  }
  return GroupWord(std::move(out));
}

GroupWord GroupWord::inverse() const {
  std::vector<GroupLetter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverted());
  GroupWord w;
  w.letters_ = std::move(out);
  return w;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<GroupLetter> out(letters_);
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GroupWord(std::move(out));
}

GroupWord GroupWord::power(long n) const {
  const GroupWord base = n < 0 ? inverse() : *this;
  GroupWord out;
  for (long i = n < 0 ? -n : n; i > 0; --i) out = out * base;
  return out;
}

bool GroupWord::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != letters_.back().inverted();
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (const auto& l : letters_) {
    if (!s.empty()) s.push_back(' ');
    s += l.name;
    if (l.inverse) s += "^-1";
  }
  return s;
}

}  // namespace treeauto
