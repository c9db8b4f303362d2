#include "multiway/strings.hpp"

#include <array>
#include <limits>

#include "multiway/errors.hpp"

namespace multiway {

std::vector<StringMatch> enumerate_matches(const std::string& host,
                                           const std::string& lhs,
                                           bool anchored) {
    if (lhs.empty()) throw EmptyLhs("string pattern with empty lhs");
    std::vector<StringMatch> out;
    if (anchored) {
        if (host == lhs) out.push_back({0, lhs.size()});
        return out;
    }
    if (lhs.size() > host.size()) return out;
    for (std::size_t pos = 0; pos + lhs.size() <= host.size(); ++pos) {
        if (host.compare(pos, lhs.size(), lhs) == 0) out.push_back({pos, lhs.size()});
    }
    return out;
}

namespace {

// Rank of a symbol: declared symbols by alphabet position, everything else
// after them by character value.
std::size_t symbol_rank(char c, const std::string& alphabet) {
    auto at = alphabet.find(c);
    if (at != std::string::npos) return at;
    return alphabet.size() + static_cast<unsigned char>(c);
}

}  // namespace

int shortlex_compare(const std::string& a, const std::string& b,
                     const std::string& alphabet) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto ra = symbol_rank(a[i], alphabet);
        auto rb = symbol_rank(b[i], alphabet);
        if (ra != rb) return ra < rb ? -1 : 1;
    }
    return 0;
}

}  // namespace multiway
