#include "citemetrics/normalize.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "citemetrics/error.hpp"

namespace citemetrics {

const char* const kDefaultAbbreviationsTsv =
    R"(# token	expansion
# Journal-title abbreviations expanded during name normalization.
# Tokens are matched after case folding and punctuation stripping.
j	journal
jour	journal
nat	nature
chem	chemical
biol	biology
biochem	biochemistry
mol	molecular
phys	physics
sci	science
proc	proceedings
natl	national
acad	academy
am	american
soc	society
res	research
rev	review
med	medicine
lett	letters
int	international
fed	federation
exp	experimental
gen	general
ann	annals
math	mathematics
eng	engineering
technol	technology
psychol	psychology
econ	economics
astron	astronomy
astrophys	astrophysics
mon	monthly
dev	development
degrad	degradation
)";

namespace {

// ASCII folding for U+00C0..U+00FF. Empty string = treat as separator.
constexpr std::array<const char*, 64> kLatin1 = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "y",
};

// U+0100..U+017F (Latin Extended-A), already lowercased.
constexpr std::array<const char*, 128> kLatinExtA = {
    "a",  "a",  "a",  "a",  "a",  "a",                                   // 0100
    "c",  "c",  "c",  "c",  "c",  "c",  "c",  "c",                       // 0106
    "d",  "d",  "d",  "d",                                               // 010E
    "e",  "e",  "e",  "e",  "e",  "e",  "e",  "e",  "e",  "e",           // 0112
    "g",  "g",  "g",  "g",  "g",  "g",  "g",  "g",                       // 011C
    "h",  "h",  "h",  "h",                                               // 0124
    "i",  "i",  "i",  "i",  "i",  "i",  "i",  "i",  "i",  "i",           // 0128
    "ij", "ij", "j",  "j",  "k",  "k",  "k",                             // 0132
    "l",  "l",  "l",  "l",  "l",  "l",  "l",  "l",  "l",  "l",           // 0139
    "n",  "n",  "n",  "n",  "n",  "n",  "n",  "n",  "n",                 // 0143
    "o",  "o",  "o",  "o",  "o",  "o",  "oe", "oe",                      // 014C
    "r",  "r",  "r",  "r",  "r",  "r",                                   // 0154
    "s",  "s",  "s",  "s",  "s",  "s",  "s",  "s",                       // 015A
    "t",  "t",  "t",  "t",  "t",  "t",                                   // 0162
    "u",  "u",  "u",  "u",  "u",  "u",  "u",  "u",  "u",  "u",  "u", "u",  // 0168
    "w",  "w",  "y",  "y",  "y",                                         // 0174
    "z",  "z",  "z",  "z",  "z",  "z",  "s",                             // 0179
};

// Decodes one UTF-8 sequence starting at s[i]; advances i. Returns -1 on an
// invalid sequence (one byte consumed).
long decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) -> long {
        if (i + k >= s.size()) return -1;
        const auto b = static_cast<unsigned char>(s[i + k]);
        return (b & 0xC0) == 0x80 ? static_cast<long>(b & 0x3F) : -1;
    };
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    long cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return -1;
    }
    for (int k = 1; k < len; ++k) {
        const long c = cont(static_cast<std::size_t>(k));
        if (c < 0) {
            ++i;
            return -1;
        }
        cp = (cp << 6) | c;
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

void flush(std::string& current, std::vector<std::string>& out) {
    if (!current.empty()) {
        out.push_back(std::move(current));
        current.clear();
    }
}

}  // namespace

std::vector<std::string> NameNormalizer::fold_tokens(std::string_view raw) {
    std::vector<std::string> out;
    std::string current;
    std::size_t i = 0;
    while (i < raw.size()) {
        const std::size_t start = i;
        const long cp = decode_utf8(raw, i);
        if (cp < 0) continue;
        if (cp < 0x80) {
            const char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') {
                current.push_back(static_cast<char>(c - 'A' + 'a'));
            } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
                current.push_back(c);
            } else if (c == '\'') {
                // apostrophes join: "Nature's" -> "natures"
            } else {
                flush(current, out);
            }
        } else if (cp >= 0xC0 && cp <= 0xFF) {
            const char* folded = kLatin1[static_cast<std::size_t>(cp - 0xC0)];
            if (*folded == '\0') flush(current, out);
            else current += folded;
        } else if (cp >= 0x100 && cp <= 0x17F) {
            current += kLatinExtA[static_cast<std::size_t>(cp - 0x100)];
        } else if (cp >= 0x300 && cp <= 0x36F) {
            // combining marks
        } else if (cp == 0x2019) {
            // right single quotation mark used as apostrophe
        } else if (cp < 0xC0 || (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F)) {
            flush(current, out);
        } else {
            current.append(raw.substr(start, i - start));
        }
    }
    flush(current, out);
    return out;
}

void NameNormalizer::add(std::string_view token, std::string_view expansion) {
    auto folded = fold_tokens(token);
    if (folded.size() != 1) {
        throw Error(ErrorKind::MalformedRecord,
                    "abbreviation token must fold to exactly one token: '" + std::string(token) + "'");
    }
    std::string joined;
    for (const auto& t : fold_tokens(expansion)) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t;
    }
    table_[folded.front()] = std::move(joined);
}

std::vector<std::string> NameNormalizer::tokens(std::string_view raw) const {
    std::vector<std::string> out;
    for (auto& tok : fold_tokens(raw)) {
        auto it = table_.find(tok);
        if (it == table_.end()) {
            out.push_back(std::move(tok));
            continue;
        }
        std::string_view expansion = it->second;
        while (!expansion.empty()) {
            const auto sp = expansion.find(' ');
            out.emplace_back(expansion.substr(0, sp));
            if (sp == std::string_view::npos) break;
            expansion.remove_prefix(sp + 1);
        }
    }
    return out;
}

std::string NameNormalizer::normalize(std::string_view raw) const {
    std::string out;
    for (const auto& tok : tokens(raw)) {
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return out;
}

NameNormalizer NameNormalizer::from_tsv(std::istream& in, std::string_view source) {
    NameNormalizer n;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw Error(ErrorKind::MalformedRecord,
                        std::string(source) + ":" + std::to_string(lineno) + ": expected token<TAB>expansion");
        }
        try {
            n.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
        } catch (const Error& e) {
            throw Error(ErrorKind::MalformedRecord,
                        std::string(source) + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return n;
}

NameNormalizer NameNormalizer::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open abbreviation table " + path.string());
    return from_tsv(in, path.string());
}

const NameNormalizer& NameNormalizer::defaults() {
    static const NameNormalizer table = [] {
        std::istringstream in(kDefaultAbbreviationsTsv);
        return from_tsv(in, "<builtin>");
    }();
    return table;
}

std::string normalize_name(std::string_view raw) { return NameNormalizer::defaults().normalize(raw); }

std::string normalize_name(std::string_view raw, const NameNormalizer& table) { return table.normalize(raw); }

}  // namespace citemetrics
