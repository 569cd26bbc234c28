#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citemetrics/corpus.hpp"
#include "citemetrics/normalize.hpp"

namespace citemetrics {

enum class CitationClass : std::uint8_t { MatchedCitable, MatchedNonCitable, UnmatchedJournal, Unresolved };

inline constexpr std::array<CitationClass, 4> kAllCitationClasses = {
    CitationClass::MatchedCitable, CitationClass::MatchedNonCitable, CitationClass::UnmatchedJournal,
    CitationClass::Unresolved};

std::string_view to_string(CitationClass c);

inline constexpr JournalIndex kNoJournal = static_cast<JournalIndex>(-1);
inline constexpr PaperIndex kNoPaper = static_cast<PaperIndex>(-1);

// Outcome of resolving one reference. Matched classes carry the cited paper;
// UnmatchedJournal carries journal and year only; Unresolved carries nothing.
struct Classification {
    CitationClass kind = CitationClass::Unresolved;
    JournalIndex journal = kNoJournal;
    PaperIndex paper = kNoPaper;
    Year cited_year = 0;

    bool has_target() const noexcept { return kind != CitationClass::Unresolved; }
    bool operator==(const Classification&) const = default;
};

struct ResolveSummary {
    std::array<std::size_t, 4> counts{};  // indexed by CitationClass
    std::size_t total = 0;
    std::size_t ambiguous = 0;  // subset of Unresolved: two or more journals matched

    std::size_t count(CitationClass c) const { return counts[static_cast<std::size_t>(c)]; }
};

// Registry of normalized journal-name keys. A key may map to more than one
// journal when a custom abbreviation table merges names; lookups through such
// a key are ambiguous.
class NameRegistry {
public:
    NameRegistry(const Corpus& corpus, const NameNormalizer& names);

    struct Match {
        JournalIndex journal = kNoJournal;
        bool ambiguous = false;
    };

    // Longest token-prefix of `tokens` that equals a registry key.
    Match longest_prefix(const std::vector<std::string>& tokens) const;

private:
    std::unordered_map<std::string, std::vector<JournalIndex>> keys_;
    std::size_t max_tokens_ = 0;
};

// First maximal run of exactly four digits whose value lies in [1800, 2100].
std::optional<Year> extract_year(std::string_view raw);

// A corpus plus one classification per reference, with the per-reference
// columns the counting modules need (citing year/journal, resolved year).
class ResolvedCorpus {
public:
    const Corpus& corpus() const noexcept { return *corpus_; }
    std::shared_ptr<const Corpus> shared_corpus() const noexcept { return corpus_; }

    const std::vector<Classification>& classifications() const noexcept { return classes_; }
    const ResolveSummary& summary() const noexcept { return summary_; }

    Year citing_year(std::size_t ref) const { return citing_year_[ref]; }
    JournalIndex citing_journal(std::size_t ref) const { return citing_journal_[ref]; }
    // Best-known cited year: resolved target year, else the record's cited_year,
    // else a year found in the raw string.
    std::optional<Year> reference_year(std::size_t ref) const {
        const Year y = reference_year_[ref];
        return y == kNoYear ? std::nullopt : std::optional<Year>(y);
    }

    // Papers of each journal, ascending PaperIndex.
    const std::vector<PaperIndex>& papers_of(JournalIndex j) const { return journal_papers_[j]; }
    // References made by each paper.
    const std::vector<std::uint32_t>& references_of(PaperIndex p) const { return paper_refs_[p]; }

    JournalIndex require_journal(std::string_view journal_id) const;

    // Indices of references left Unresolved because more than one journal matched.
    const std::vector<std::size_t>& ambiguous_references() const noexcept { return ambiguous_; }

private:
    friend ResolvedCorpus resolve(std::shared_ptr<const Corpus>, const NameNormalizer&);
    static constexpr Year kNoYear = std::numeric_limits<Year>::min();

    std::shared_ptr<const Corpus> corpus_;
    std::vector<Classification> classes_;
    std::vector<Year> citing_year_;
    std::vector<JournalIndex> citing_journal_;
    std::vector<Year> reference_year_;
    std::vector<std::vector<PaperIndex>> journal_papers_;
    std::vector<std::vector<std::uint32_t>> paper_refs_;
    std::vector<std::size_t> ambiguous_;
    ResolveSummary summary_;
};

// Classifies every reference:
//   cited_paper_id present          -> MatchedCitable / MatchedNonCitable by doc type
//   journal-name prefix + a year     -> UnmatchedJournal
//   otherwise (or ambiguous name)    -> Unresolved
ResolvedCorpus resolve(std::shared_ptr<const Corpus> corpus,
                       const NameNormalizer& names = NameNormalizer::defaults());
ResolvedCorpus resolve(Corpus corpus, const NameNormalizer& names = NameNormalizer::defaults());

// "class,count" rows for the four classes followed by a total row.
void write_resolve_report(const ResolveSummary& summary, std::ostream& out);

}  // namespace citemetrics
