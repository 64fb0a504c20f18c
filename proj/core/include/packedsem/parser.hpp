#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "packedsem/forest.hpp"

namespace packedsem {

struct UnknownTokenError : std::runtime_error {
    UnknownTokenError(std::string token, std::size_t position)
        : std::runtime_error("unknown token '" + token + "' at position " +
                             std::to_string(position)),
          token(std::move(token)),
          position(position) {}
    std::string token;
    std::size_t position;
};

/// Chart-parse the token sequence into a maximally shared forest: one OR
/// node per ambiguous (category, span) cell, identical rule
/// instantiations shared. Returns nullopt when the input has no parse;
/// throws UnknownTokenError for tokens outside the lexicon.
std::optional<Forest> parse(std::span<const std::string> tokens,
                            const BackboneGrammar& grammar);

/// "i saw a man" followed by n copies of "on a hill".
std::vector<std::string> pp_sentence(std::size_t n);

}  // namespace packedsem
