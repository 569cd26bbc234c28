#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citemetrics {

// Canonicalizes journal-name strings: case folding, diacritic and punctuation
// stripping, whitespace collapsing, then per-token abbreviation expansion.
//
// The abbreviation table is keyed by the *folded* token, so "J.", "j" and "J"
// all hit the same entry. Expansions may span several tokens or be empty
// (dropping the token).
class NameNormalizer {
public:
    NameNormalizer() = default;

    // Table shipped with the library; same content as data/abbreviations.tsv.
    static const NameNormalizer& defaults();

    // Parses "token<TAB>expansion" lines. '#' comments and blank lines are
    // skipped. Throws Error(MalformedRecord) naming the offending line.
    static NameNormalizer from_tsv(std::istream& in, std::string_view source = "<stream>");
    static NameNormalizer from_file(const std::filesystem::path& path);

    void add(std::string_view token, std::string_view expansion);

    std::string normalize(std::string_view raw) const;
    std::vector<std::string> tokens(std::string_view raw) const;

    const std::unordered_map<std::string, std::string>& table() const noexcept { return table_; }

    // Folding and tokenization only, no abbreviation lookup.
    static std::vector<std::string> fold_tokens(std::string_view raw);

private:
    std::unordered_map<std::string, std::string> table_;
};

// Default-table conveniences.
std::string normalize_name(std::string_view raw);
std::string normalize_name(std::string_view raw, const NameNormalizer& table);

extern const char* const kDefaultAbbreviationsTsv;

}  // namespace citemetrics
