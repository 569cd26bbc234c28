#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citemetrics/error.hpp"
#include "citemetrics/normalize.hpp"

namespace citemetrics {

using Year = int;

enum class DocumentType { Article, Review, Editorial, Letter, NewsItem, Obituary, Other };

// Articles and reviews count in the denominator; everything else is front matter.
constexpr bool citable(DocumentType kind) noexcept {
    return kind == DocumentType::Article || kind == DocumentType::Review;
}

std::string_view to_string(DocumentType kind);

// Case-insensitive; unknown strings yield nullopt (callers map them to Other).
std::optional<DocumentType> parse_document_type(std::string_view text);

struct PaperRecord {
    std::string paper_id;
    std::string journal_id;
    Year pub_year = 0;
    DocumentType doc_type = DocumentType::Article;

    bool operator==(const PaperRecord&) const = default;
};

struct JournalEntry {
    std::string journal_id;
    std::string canonical_name;
    std::vector<std::string> name_variants;
    std::string discipline;
    std::optional<std::string> specialty;

    bool operator==(const JournalEntry&) const = default;
};

struct RawReference {
    std::string citing_paper_id;
    std::string raw_cited_string;
    std::optional<std::string> cited_paper_id;
    std::optional<std::string> cited_journal_id;
    std::optional<Year> cited_year;

    bool operator==(const RawReference&) const = default;
};

struct YearRange {
    Year min_year = 0;
    Year max_year = 0;

    bool contains(Year y) const noexcept { return y >= min_year && y <= max_year; }
    bool operator==(const YearRange&) const = default;
};

using PaperIndex = std::uint32_t;
using JournalIndex = std::uint32_t;

// Immutable, validated store of papers, journals and references. Built only
// through CorpusBuilder or ingest(); the public surface is read-only.
//
// Dense indices (PaperIndex / JournalIndex) follow insertion order and are
// stable for the corpus lifetime.
class Corpus {
public:
    Corpus() = default;

    const std::vector<PaperRecord>& papers() const noexcept { return papers_; }
    const std::vector<JournalEntry>& journals() const noexcept { return journals_; }
    const std::vector<RawReference>& references() const noexcept { return references_; }
    YearRange year_range() const noexcept { return year_range_; }

    std::optional<PaperIndex> paper_index(std::string_view paper_id) const;
    std::optional<JournalIndex> journal_index(std::string_view journal_id) const;

    // Per-reference citing paper, aligned with references().
    const std::vector<PaperIndex>& citing_papers() const noexcept { return citing_; }
    // Per-paper journal, aligned with papers().
    const std::vector<JournalIndex>& paper_journals() const noexcept { return paper_journal_; }
    // Number of references whose citing paper is `p`.
    std::size_t outgoing_count(PaperIndex p) const { return outgoing_[p]; }

    // Field-by-field equality over records (order-sensitive).
    bool operator==(const Corpus& other) const;

private:
    friend class CorpusBuilder;

    std::vector<PaperRecord> papers_;
    std::vector<JournalEntry> journals_;
    std::vector<RawReference> references_;
    YearRange year_range_;

    std::unordered_map<std::string, PaperIndex> paper_lookup_;
    std::unordered_map<std::string, JournalIndex> journal_lookup_;
    std::vector<PaperIndex> citing_;
    std::vector<JournalIndex> paper_journal_;
    std::vector<std::uint32_t> outgoing_;
};

// Single-writer accumulator. finalize() validates everything at once and
// either returns a Corpus or throws IngestError listing every issue.
class CorpusBuilder {
public:
    explicit CorpusBuilder(const NameNormalizer& names = NameNormalizer::defaults()) : names_(&names) {}

    // `line` feeds diagnostics only (0 = not from a file).
    void add_journal(JournalEntry journal, std::size_t line = 0);
    void add_paper(PaperRecord paper, std::size_t line = 0);
    void add_reference(RawReference reference, std::size_t line = 0);

    void reserve(std::size_t papers, std::size_t references);
    void report(IngestIssue issue) { issues_.push_back(std::move(issue)); }

    void set_source_names(std::string papers, std::string journals, std::string references);

    Corpus finalize() &&;

private:
    const NameNormalizer* names_;
    Corpus corpus_;
    std::vector<std::size_t> paper_lines_;
    std::vector<std::size_t> journal_lines_;
    std::vector<std::size_t> reference_lines_;
    std::vector<IngestIssue> issues_;
    std::string papers_file_ = "papers";
    std::string journals_file_ = "journals";
    std::string references_file_ = "references";
};

struct CorpusFiles {
    std::filesystem::path papers;
    std::filesystem::path journals;
    std::filesystem::path references;

    // papers.jsonl / journals.jsonl / references.jsonl inside `dir`.
    static CorpusFiles in_directory(const std::filesystem::path& dir);
};

// Non-fatal observations made during ingest (e.g. unknown doc_type strings).
struct IngestWarning {
    std::string file;
    std::size_t line = 0;
    std::string message;
};

// Streams the three JSONL files. Throws Error(Io) when a file cannot be opened
// and IngestError when any record is invalid; no partial corpus is returned.
Corpus ingest(const CorpusFiles& files, std::vector<IngestWarning>* warnings = nullptr,
              const NameNormalizer& names = NameNormalizer::defaults());

Corpus ingest(const std::filesystem::path& papers_path, const std::filesystem::path& journals_path,
              const std::filesystem::path& references_path);

// Writes the three JSONL files; ingest() of the result reproduces the corpus.
void export_corpus(const Corpus& corpus, const CorpusFiles& files);
void export_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Filter: papers whose pub_year lies in [from, to]. Both inclusive.
struct YearFilter {
    std::optional<Year> from;
    std::optional<Year> to;

    bool accepts(Year y) const noexcept {
        return (!from || y >= *from) && (!to || y <= *to);
    }
};

// Share of papers with a citable doc_type. Throws EmptySelection when no
// paper passes the filter.
double citable_share(const Corpus& corpus, const YearFilter& filter = {});

}  // namespace citemetrics
