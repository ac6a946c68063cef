#include "treeauto/machine_format.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "treeauto/error.hpp"

namespace treeauto {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(text[i++]);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(c);
      ++i;
      continue;
    }
    Token t{{}, line, column};
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
           text[i] != '\n' && text[i] != '#') {
      t.text.push_back(text[i]);
      advance(text[i++]);
    }
    tokens.push_back(std::move(t));
  }
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  GeneratorSet run() {
    expect_keyword("alphabet");
    const Token& size_tok = peek("alphabet size");
    const std::size_t k = number(next("alphabet size"));
    if (k == 0 || k > kMaxAlphabet)
      fail(size_tok, "alphabet size must be in 1.." + std::to_string(kMaxAlphabet));
    alphabet_ = Alphabet(k);

    while (pos_ < tokens_.size()) {
      const Token& kw = next("keyword");
      if (kw.text == "state") {
        parse_state();
      } else if (kw.text == "initial") {
        const Token& name = next("state name");
        initials_.push_back(&name);
      } else {
        fail(kw, "expected 'state' or 'initial', got '" + kw.text + "'");
      }
    }
    return build();
  }

 private:
  struct StateDecl {
    const Token* name;
    std::vector<Letter> perm;
    std::vector<const Token*> targets;
  };

  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    throw ParseError(what, at.line, at.column);
  }

  const Token& peek(const std::string& what) {
    if (pos_ >= tokens_.size()) {
      const std::size_t line = tokens_.empty() ? 1 : tokens_.back().line;
      const std::size_t col = tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size();
      throw ParseError("unexpected end of input, expected " + what, line, col);
    }
    return tokens_[pos_];
  }
  const Token& next(const std::string& what) {
    const Token& t = peek(what);
    ++pos_;
    return t;
  }
  void expect_keyword(const std::string& kw) {
    const Token& t = next("'" + kw + "'");
    if (t.text != kw) fail(t, "expected '" + kw + "', got '" + t.text + "'");
  }
  std::size_t number(const Token& t) const {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
      fail(t, "expected a nonnegative integer, got '" + t.text + "'");
    return v;
  }
  Letter letter(const Token& t) const {
    const std::size_t v = number(t);
    if (!alphabet_.contains(v)) fail(t, "letter " + t.text + " outside the alphabet");
    return static_cast<Letter>(v);
  }

  void parse_state() {
    const Token& name = next("state name");
    if (name.text == "e") fail(name, "the identity state 'e' is reserved");
    if (index_.contains(name.text)) fail(name, "state '" + name.text + "' declared twice");
    const std::size_t k = alphabet_.size();
    StateDecl decl{&name, {}, std::vector<const Token*>(k, nullptr)};

    expect_keyword("perm");
    std::vector<bool> hit(k, false);
    for (std::size_t x = 0; x < k; ++x) {
      const Token& t = next("permutation image");
      const Letter y = letter(t);
      if (hit[y]) fail(t, "permutation repeats letter " + t.text);
      hit[y] = true;
      decl.perm.push_back(y);
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Token& on = next("'on'");
      if (on.text != "on") fail(on, "state '" + name.text + "' needs one 'on' line per letter");
      const Token& xt = next("letter");
      const Letter x = letter(xt);
      if (decl.targets[x]) fail(xt, "duplicate transition on letter " + xt.text);
      expect_keyword("->");
      decl.targets[x] = &next("target state");
    }
    index_.emplace(name.text, static_cast<StateId>(decls_.size() + 1));
    decls_.push_back(std::move(decl));
  }

  StateId resolve(const Token& t) const {
    if (t.text == "e") return AutomatonMachine::identity_state;
    const auto it = index_.find(t.text);
    if (it == index_.end()) fail(t, "undefined state '" + t.text + "'");
    return it->second;
  }

  GeneratorSet build() {
    AutomatonMachine machine(alphabet_);
    for (const auto& d : decls_) machine.add_state(Permutation(d.perm));
    for (std::size_t i = 0; i < decls_.size(); ++i)
      for (std::size_t x = 0; x < alphabet_.size(); ++x)
        machine.set_transition(static_cast<StateId>(i + 1), static_cast<Letter>(x),
                               resolve(*decls_[i].targets[x]));
    GeneratorSet gens(alphabet_);
    for (const Token* t : initials_) {
      if (t->text == "e") fail(*t, "the identity state 'e' cannot be exported");
      if (gens.find(t->text)) fail(*t, "generator '" + t->text + "' exported twice");
      gens.add(t->text, machine.automorphism(resolve(*t)));
    }
    return gens;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Alphabet alphabet_;
  std::vector<StateDecl> decls_;
  std::unordered_map<std::string, StateId> index_;
  std::vector<const Token*> initials_;
};

}  // namespace

GeneratorSet parse_machine(std::string_view text) { return Parser(text).run(); }

GeneratorSet load_machine_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open machine file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

std::string format_machine(const GeneratorSet& gens) {
  const std::size_t k = gens.alphabet().size();
  std::set<std::string> taken(gens.names().begin(), gens.names().end());
  taken.insert("e");

  // Distinct sections in deterministic order, each with its printed name.
  std::vector<Automorphism> states;
  std::unordered_map<Automorphism, std::string> names;
  names.emplace(Automorphism(gens.alphabet()), "e");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Automorphism& g = gens.element(i);
    if (!names.contains(g)) {
      names.emplace(g, gens.name(i));
      states.push_back(g);
    }
  }
  std::size_t counter = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Automorphism g = states[i];
    for (StateId s = 1; s < g.state_count(); ++s) {
      Automorphism sub = g.state(s);
      if (names.contains(sub)) continue;
      std::string name;
      do name = "s" + std::to_string(++counter);
      while (taken.contains(name));
      taken.insert(name);
      names.emplace(sub, name);
      states.push_back(std::move(sub));
    }
  }

  std::ostringstream out;
  out << "alphabet " << k << "\n";
  auto block = [&](const std::string& name, const Automorphism& g) {
    const StateId s = g.initial();
    out << "state " << name << "\nperm";
    for (std::size_t x = 0; x < k; ++x) out << ' ' << g.output(s, static_cast<Letter>(x));
    out << "\n";
    for (std::size_t x = 0; x < k; ++x)
      out << "on " << x << " -> " << names.at(g.state(g.next(s, static_cast<Letter>(x)))) << "\n";
  };
  for (const auto& g : states)
    if (!g.is_identity()) block(names.at(g), g);
  // Generators that coincide with an earlier element or the identity get their own block.
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (names.at(gens.element(i)) != gens.name(i)) block(gens.name(i), gens.element(i));
  for (const auto& name : gens.names()) out << "initial " << name << "\n";
  return out.str();
}

}  // namespace treeauto
