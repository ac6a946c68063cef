#include "treeauto/words.hpp"

#include <algorithm>

#include "treeauto/error.hpp"

namespace treeauto {

Alphabet::Alphabet(std::size_t size) : size_(size) {
  if (size == 0 || size > kMaxAlphabet)
    throw Error("alphabet size must be in 1.." + std::to_string(kMaxAlphabet));
}

char letter_to_char(Letter x) {
  return x < 10 ? static_cast<char>('0' + x) : static_cast<char>('a' + (x - 10));
}

int char_to_letter(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

Vertex Vertex::parse(std::string_view text, Alphabet alphabet) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    const int x = char_to_letter(c);
    if (x < 0 || !alphabet.contains(static_cast<std::size_t>(x)))
      throw Error("letter '" + std::string(1, c) + "' outside alphabet of size " +
                  std::to_string(alphabet.size()));
    letters.push_back(static_cast<Letter>(x));
  }
  return Vertex(std::move(letters));
}

Vertex Vertex::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return Vertex(std::vector<Letter>(letters_.begin(), letters_.begin() + n));
}

Vertex Vertex::concat(const Vertex& tail) const {
  std::vector<Letter> out(letters_);
  out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
  return Vertex(std::move(out));
}

std::string Vertex::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto x : letters_) s.push_back(letter_to_char(x));
  return s;
}

namespace {

std::vector<Letter> primitive_root(const std::vector<Letter>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return {w.begin(), w.begin() + d};
  }
  return w;
}

}  // namespace

BoundaryPoint::BoundaryPoint(Vertex preperiod, Vertex period) {
  if (period.empty()) throw Error("boundary point needs a nonempty period");
  std::vector<Letter> pre(preperiod.begin(), preperiod.end());
  std::vector<Letter> per = primitive_root({period.begin(), period.end()});
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  preperiod_ = Vertex(std::move(pre));
  period_ = Vertex(std::move(per));
}

BoundaryPoint BoundaryPoint::parse(std::string_view text, Alphabet alphabet) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error("boundary point must be written PRE:PER, got '" + std::string(text) + "'");
  return BoundaryPoint(Vertex::parse(text.substr(0, colon), alphabet),
                       Vertex::parse(text.substr(colon + 1), alphabet));
}

Letter BoundaryPoint::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

Vertex BoundaryPoint::prefix(std::size_t n) const {
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return Vertex(std::move(out));
}

BoundaryPoint BoundaryPoint::shift(std::size_t n) const {
  if (n <= preperiod_.size()) {
    std::vector<Letter> pre(preperiod_.begin() + static_cast<std::ptrdiff_t>(n), preperiod_.end());
    return BoundaryPoint(Vertex(std::move(pre)), period_);
  }
  const std::size_t phase = (n - preperiod_.size()) % period_.size();
  std::vector<Letter> per(period_.begin(), period_.end());
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(phase), per.end());
  return BoundaryPoint(Vertex{}, Vertex(std::move(per)));
}

std::string BoundaryPoint::to_string() const {
  return preperiod_.to_string() + ":" + period_.to_string();
}

}  // namespace treeauto
