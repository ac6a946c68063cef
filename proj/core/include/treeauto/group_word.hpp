#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace treeauto {

/// One generator or its inverse.
struct GroupLetter {
  std::string name;
  bool inverse = false;

  GroupLetter inverted() const { return {name, !inverse}; }
  friend bool operator==(const GroupLetter&, const GroupLetter&) = default;
  friend auto operator<=>(const GroupLetter&, const GroupLetter&) = default;
};

/// A freely reduced word over named generators.
class GroupWord {
 public:
  GroupWord() = default;
  /// Reduces the letters freely.
  explicit GroupWord(std::vector<GroupLetter> letters);

  /// Parses words such as "a b^-1 a^3" (tokens separated by blanks, '*' or
  /// '.'). The tokens "1" and "e" denote the empty word.
  static GroupWord parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const GroupLetter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<GroupLetter>& letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;
  /// w^n for any integer n.
  GroupWord power(long n) const;
  bool is_cyclically_reduced() const;

  /// "a b^-1 a"; the empty word prints as "1".
  std::string to_string() const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend auto operator<=>(const GroupWord& a, const GroupWord& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<GroupLetter> letters_;
};

}  // namespace treeauto
