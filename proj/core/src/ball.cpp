#include "treeauto/ball.hpp"

#include <unordered_set>

namespace treeauto {

WordBall word_ball(const GeneratorSet& gens, std::size_t radius, std::size_t budget) {
  std::vector<std::pair<GroupLetter, Automorphism>> letters;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    letters.emplace_back(GroupLetter{gens.name(i), false}, gens.element(i));
    letters.emplace_back(GroupLetter{gens.name(i), true}, invert(gens.element(i)));
  }

  WordBall ball;
  std::unordered_set<Automorphism> seen;
  const Automorphism identity(gens.alphabet());
  seen.insert(identity);
  ball.elements.push_back({identity, GroupWord{}});
  ball.layer_start.push_back(0);
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t begin = ball.layer_start.back();
    const std::size_t end = ball.elements.size();
    ball.layer_start.push_back(end);
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& [letter, g] : letters) {
        // Only reduced extensions can be shortlex-least.
        const auto& w = ball.elements[i].word;
        if (!w.empty() && w.letters().back() == letter.inverted()) continue;
        Automorphism h = compose(ball.elements[i].element, g);
        if (!seen.insert(h).second) continue;
        if (ball.elements.size() >= budget) {
          ball.truncated = true;
          ball.radius = r - 1;
          return ball;
        }
        std::vector<GroupLetter> next(w.letters());
        next.push_back(letter);
        ball.elements.push_back({std::move(h), GroupWord(std::move(next))});
      }
    }
    ball.radius = r;
    if (ball.elements.size() == end) {
      ball.exhausted = true;
      ball.layer_start.pop_back();
      ball.radius = r - 1;
      break;
    }
  }
  return ball;
}

}  // namespace treeauto
