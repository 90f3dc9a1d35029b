#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scoring/game.hpp"

namespace scoring {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Reads the brace notation
///
///   game  := "{" opts "|" score "|" opts "}" | score
///   opts  := empty | game ("," game)*
///   score := integer | integer "/" positive-integer | decimal
///
/// Whitespace is ignored. A bare score is a game with no options.
Game parse_game(std::string_view text);

/// Inverse of parse_game for canonical games. Options without moves are
/// written as bare scores; a root without moves is written "{|s|}".
std::string to_notation(const Game& g);

}  // namespace scoring
