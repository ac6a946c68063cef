#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treeauto {

using Letter = std::uint16_t;

/// Largest alphabet the text encodings support (letters print as base-36 digits).
inline constexpr std::size_t kMaxAlphabet = 36;

/// Number of letters in the fixed alphabet {0, ..., size-1}.
class Alphabet {
 public:
  constexpr Alphabet() = default;
  explicit Alphabet(std::size_t size);

  constexpr std::size_t size() const noexcept { return size_; }
  constexpr bool contains(std::size_t letter) const noexcept { return letter < size_; }

  friend constexpr bool operator==(Alphabet, Alphabet) = default;

 private:
  std::size_t size_ = 2;
};

char letter_to_char(Letter x);
/// Returns -1 for characters that are not base-36 digits.
int char_to_letter(char c);

/// A finite word over the alphabet, read from the root: the first letter picks a
/// child of the root. The empty word is the root itself.
class Vertex {
 public:
  Vertex() = default;
  Vertex(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Vertex(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Parses a digit string such as "0110"; throws if a letter is outside `alphabet`.
  static Vertex parse(std::string_view text, Alphabet alphabet);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  void push_back(Letter x) { letters_.push_back(x); }
  Vertex prefix(std::size_t n) const;
  Vertex concat(const Vertex& tail) const;

  std::string to_string() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    // Shortlex: level first, then lexicographic.
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

/// An eventually periodic boundary point `preperiod · period^ω`.
///
/// Always held in canonical form: the period is primitive, and the preperiod
/// is as short as possible (its last letter never equals the last letter of the
/// period, otherwise the period could be rotated back over it).
class BoundaryPoint {
 public:
  /// 0^ω.
  BoundaryPoint() : period_{0} {}
  BoundaryPoint(Vertex preperiod, Vertex period);

  /// Parses the `PRE:PER` notation, e.g. ":0" for 0^ω or "1:10" for 1(10)^ω.
  static BoundaryPoint parse(std::string_view text, Alphabet alphabet);

  const Vertex& preperiod() const noexcept { return preperiod_; }
  const Vertex& period() const noexcept { return period_; }

  Letter at(std::size_t i) const;
  Vertex prefix(std::size_t n) const;
  /// The point with its first `n` letters removed.
  BoundaryPoint shift(std::size_t n) const;

  std::string to_string() const;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
  friend auto operator<=>(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (auto c = a.period_ <=> b.period_; c != 0) return c;
    return a.preperiod_ <=> b.preperiod_;
  }

 private:
  Vertex preperiod_;
  Vertex period_;
};

}  // namespace treeauto

template <>
struct std::hash<treeauto::Vertex> {
  std::size_t operator()(const treeauto::Vertex& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL ^ v.size();
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};
