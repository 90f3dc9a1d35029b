#include "scoring/notation.hpp"

#include <cctype>
#include <vector>

namespace scoring {

namespace {

class GameParser {
 public:
  explicit GameParser(std::string_view text) : text_(text) {}

  Game parse() {
    Game g = game();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Game game() {
    if (peek() != '{') return Game::number(score());
    ++pos_;
    std::vector<Game> left = options('|');
    expect('|');
    Score s = score();
    expect('|');
    std::vector<Game> right = options('}');
    expect('}');
    return Game(s, std::move(left), std::move(right));
  }

  std::vector<Game> options(char terminator) {
    std::vector<Game> out;
    if (peek() == terminator) return out;
    out.push_back(game());
    while (peek() == ',') {
      ++pos_;
      out.push_back(game());
    }
    return out;
  }

  Score score() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/' || c == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) {
      pos_ = start;
      fail("expected a score");
    }
    try {
      return Score::parse(text_.substr(start, pos_ - start));
    } catch (const std::exception& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write(const Game& g, bool root, std::string& out) {
  if (g.is_number() && !root) {
    out += g.score().str();
    return;
  }
  out += '{';
  for (std::size_t i = 0; i < g.left().size(); ++i) {
    if (i) out += ',';
    write(g.left()[i], false, out);
  }
  out += '|';
  out += g.score().str();
  out += '|';
  for (std::size_t i = 0; i < g.right().size(); ++i) {
    if (i) out += ',';
    write(g.right()[i], false, out);
  }
  out += '}';
}

}  // namespace

Game parse_game(std::string_view text) { return GameParser(text).parse(); }

std::string to_notation(const Game& g) {
  std::string out;
  write(g, true, out);
  return out;
}

}  // namespace scoring
