#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multiway/ids.hpp"

namespace multiway {

// A string state: symbol sequence plus one token per character occurrence.
// Invariant: tokens.size() == chars.size().
struct StringState {
    std::string chars;
    std::vector<TokenId> tokens;
};

struct StringRulePattern {
    std::string lhs;
    std::string rhs;
};

// A match is the tri-partition chars = prefix + lhs + suffix at offset pos.
struct StringMatch {
    std::size_t pos = 0;
    std::size_t len = 0;  // |lhs|
};

// All occurrences of lhs in host, leftmost first; overlapping occurrences all
// count. Anchored patterns match only the whole string. Throws EmptyLhs.
std::vector<StringMatch> enumerate_matches(const std::string& host,
                                           const std::string& lhs,
                                           bool anchored);

// Shortlex: by length, then position of the first differing symbol in the
// declared alphabet order. Symbols absent from `alphabet` sort after declared
// ones, by character value.
int shortlex_compare(const std::string& a, const std::string& b,
                     const std::string& alphabet);

}  // namespace multiway
