#include "citemetrics/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace citemetrics {

namespace {

constexpr std::array<std::pair<std::string_view, DocumentType>, 10> kDocTypeNames = {{
    {"article", DocumentType::Article},
    {"review", DocumentType::Review},
    {"editorial", DocumentType::Editorial},
    {"editorial material", DocumentType::Editorial},
    {"letter", DocumentType::Letter},
    {"newsitem", DocumentType::NewsItem},
    {"news item", DocumentType::NewsItem},
    {"news", DocumentType::NewsItem},
    {"obituary", DocumentType::Obituary},
    {"other", DocumentType::Other},
}};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(DocumentType kind) {
    switch (kind) {
        case DocumentType::Article: return "Article";
        case DocumentType::Review: return "Review";
        case DocumentType::Editorial: return "Editorial";
        case DocumentType::Letter: return "Letter";
        case DocumentType::NewsItem: return "NewsItem";
        case DocumentType::Obituary: return "Obituary";
        case DocumentType::Other: return "Other";
    }
    return "Other";
}

std::optional<DocumentType> parse_document_type(std::string_view text) {
    const std::string key = lower(text);
    for (const auto& [name, kind] : kDocTypeNames) {
        if (key == name) return kind;
    }
    return std::nullopt;
}

std::optional<PaperIndex> Corpus::paper_index(std::string_view paper_id) const {
    auto it = paper_lookup_.find(std::string(paper_id));
    if (it == paper_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<JournalIndex> Corpus::journal_index(std::string_view journal_id) const {
    auto it = journal_lookup_.find(std::string(journal_id));
    if (it == journal_lookup_.end()) return std::nullopt;
    return it->second;
}

bool Corpus::operator==(const Corpus& other) const {
    return papers_ == other.papers_ && journals_ == other.journals_ && references_ == other.references_ &&
           year_range_ == other.year_range_;
}

void CorpusBuilder::add_journal(JournalEntry journal, std::size_t line) {
    corpus_.journals_.push_back(std::move(journal));
    journal_lines_.push_back(line);
}

void CorpusBuilder::add_paper(PaperRecord paper, std::size_t line) {
    corpus_.papers_.push_back(std::move(paper));
    paper_lines_.push_back(line);
}

void CorpusBuilder::add_reference(RawReference reference, std::size_t line) {
    corpus_.references_.push_back(std::move(reference));
    reference_lines_.push_back(line);
}

void CorpusBuilder::reserve(std::size_t papers, std::size_t references) {
    corpus_.papers_.reserve(papers);
    paper_lines_.reserve(papers);
    corpus_.references_.reserve(references);
    reference_lines_.reserve(references);
}

void CorpusBuilder::set_source_names(std::string papers, std::string journals, std::string references) {
    papers_file_ = std::move(papers);
    journals_file_ = std::move(journals);
    references_file_ = std::move(references);
}

Corpus CorpusBuilder::finalize() && {
    auto& c = corpus_;
    auto issue = [&](ErrorKind kind, const std::string& file, std::size_t line, std::string msg) {
        issues_.push_back(IngestIssue{kind, file, line, std::move(msg)});
    };

    // Journals: ids unique, names nonempty, normalized names unique across journals.
    std::unordered_map<std::string, JournalIndex> name_keys;
    c.journal_lookup_.reserve(c.journals_.size());
    for (std::size_t j = 0; j < c.journals_.size(); ++j) {
        const auto& entry = c.journals_[j];
        const auto line = journal_lines_[j];
        if (entry.journal_id.empty()) {
            issue(ErrorKind::MalformedRecord, journals_file_, line, "empty journal_id");
            continue;
        }
        if (!c.journal_lookup_.emplace(entry.journal_id, static_cast<JournalIndex>(j)).second) {
            issue(ErrorKind::DuplicateId, journals_file_, line, "duplicate journal_id " + entry.journal_id);
            continue;
        }
        if (entry.canonical_name.empty()) {
            issue(ErrorKind::MalformedRecord, journals_file_, line, "empty canonical_name for " + entry.journal_id);
            continue;
        }
        auto register_name = [&](const std::string& name) {
            const std::string key = names_->normalize(name);
            if (key.empty()) {
                issue(ErrorKind::MalformedRecord, journals_file_, line,
                      "name '" + name + "' of " + entry.journal_id + " normalizes to an empty key");
                return;
            }
            auto [it, inserted] = name_keys.emplace(key, static_cast<JournalIndex>(j));
            if (!inserted && it->second != j) {
                issue(ErrorKind::VariantCollision, journals_file_, line,
                      "name '" + name + "' collides: " + c.journals_[it->second].journal_id + " vs " +
                          entry.journal_id);
            }
        };
        register_name(entry.canonical_name);
        for (const auto& v : entry.name_variants) register_name(v);
    }

    // Papers.
    c.paper_lookup_.reserve(c.papers_.size());
    c.paper_journal_.assign(c.papers_.size(), 0);
    Year min_year = std::numeric_limits<Year>::max();
    Year max_year = std::numeric_limits<Year>::min();
    for (std::size_t p = 0; p < c.papers_.size(); ++p) {
        const auto& paper = c.papers_[p];
        const auto line = paper_lines_[p];
        if (paper.paper_id.empty()) {
            issue(ErrorKind::MalformedRecord, papers_file_, line, "empty paper_id");
            continue;
        }
        if (!c.paper_lookup_.emplace(paper.paper_id, static_cast<PaperIndex>(p)).second) {
            issue(ErrorKind::DuplicateId, papers_file_, line, "duplicate paper_id " + paper.paper_id);
            continue;
        }
        auto j = c.journal_lookup_.find(paper.journal_id);
        if (j == c.journal_lookup_.end()) {
            issue(ErrorKind::MalformedRecord, papers_file_, line,
                  "paper " + paper.paper_id + " names unknown journal_id " + paper.journal_id);
            continue;
        }
        c.paper_journal_[p] = j->second;
        min_year = std::min(min_year, paper.pub_year);
        max_year = std::max(max_year, paper.pub_year);
    }
    c.year_range_ = c.papers_.empty() ? YearRange{} : YearRange{min_year, max_year};

    // References.
    c.citing_.assign(c.references_.size(), 0);
    c.outgoing_.assign(c.papers_.size(), 0);
    for (std::size_t r = 0; r < c.references_.size(); ++r) {
        const auto& ref = c.references_[r];
        const auto line = reference_lines_[r];
        auto citing = c.paper_lookup_.find(ref.citing_paper_id);
        if (citing == c.paper_lookup_.end()) {
            issue(ErrorKind::DanglingReference, references_file_, line,
                  "citing_paper_id " + ref.citing_paper_id + " not in corpus");
            continue;
        }
        c.citing_[r] = citing->second;
        ++c.outgoing_[citing->second];
        if (ref.cited_journal_id && !c.journal_lookup_.count(*ref.cited_journal_id)) {
            issue(ErrorKind::DanglingReference, references_file_, line,
                  "cited_journal_id " + *ref.cited_journal_id + " not in corpus (citing " + ref.citing_paper_id + ")");
        }
        if (!ref.cited_paper_id) continue;
        auto cited = c.paper_lookup_.find(*ref.cited_paper_id);
        if (cited == c.paper_lookup_.end()) {
            issue(ErrorKind::DanglingReference, references_file_, line,
                  "cited_paper_id " + *ref.cited_paper_id + " not in corpus (citing " + ref.citing_paper_id + ")");
            continue;
        }
        const auto& target = c.papers_[cited->second];
        if (ref.cited_journal_id && *ref.cited_journal_id != target.journal_id) {
            issue(ErrorKind::MalformedRecord, references_file_, line,
                  "cited_journal_id disagrees with cited paper " + target.paper_id);
        }
        if (ref.cited_year && *ref.cited_year != target.pub_year) {
            issue(ErrorKind::MalformedRecord, references_file_, line,
                  "cited_year disagrees with cited paper " + target.paper_id);
        }
    }

    if (!issues_.empty()) throw IngestError(std::move(issues_));
    return std::move(c);
}

CorpusFiles CorpusFiles::in_directory(const std::filesystem::path& dir) {
    return {dir / "papers.jsonl", dir / "journals.jsonl", dir / "references.jsonl"};
}

namespace {

using nlohmann::json;

struct LineReader {
    std::ifstream in;
    std::string file;

    explicit LineReader(const std::filesystem::path& path) : in(path), file(path.filename().string()) {
        if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
};

// Field extraction helpers; each returns false and records an issue on mismatch.
class RecordReader {
public:
    RecordReader(const json& obj, CorpusBuilder& builder, const std::string& file, std::size_t line)
        : obj_(obj), builder_(builder), file_(file), line_(line) {}

    bool ok() const { return ok_; }

    std::string string(const char* key) {
        auto it = obj_.find(key);
        if (it == obj_.end() || !it->is_string()) {
            fail(std::string("field '") + key + "' must be a string");
            return {};
        }
        return it->get<std::string>();
    }

    std::optional<std::string> optional_string(const char* key) {
        auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) {
            fail(std::string("field '") + key + "' must be a string or null");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    Year integer(const char* key) {
        auto it = obj_.find(key);
        if (it == obj_.end() || !it->is_number_integer()) {
            fail(std::string("field '") + key + "' must be an integer");
            return 0;
        }
        return it->get<Year>();
    }

    std::optional<Year> optional_integer(const char* key) {
        auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) return std::nullopt;
        if (!it->is_number_integer()) {
            fail(std::string("field '") + key + "' must be an integer or null");
            return std::nullopt;
        }
        return it->get<Year>();
    }

    std::vector<std::string> string_list(const char* key) {
        auto it = obj_.find(key);
        std::vector<std::string> out;
        if (it == obj_.end() || it->is_null()) return out;
        if (!it->is_array()) {
            fail(std::string("field '") + key + "' must be an array of strings");
            return out;
        }
        for (const auto& v : *it) {
            if (!v.is_string()) {
                fail(std::string("field '") + key + "' must be an array of strings");
                return {};
            }
            out.push_back(v.get<std::string>());
        }
        return out;
    }

private:
    void fail(std::string msg) {
        ok_ = false;
        builder_.report(IngestIssue{ErrorKind::MalformedRecord, file_, line_, std::move(msg)});
    }

    const json& obj_;
    CorpusBuilder& builder_;
    const std::string& file_;
    std::size_t line_;
    bool ok_ = true;
};

template <typename Handler>
void for_each_record(LineReader& reader, CorpusBuilder& builder, Handler&& handle) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(reader.in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            builder.report(IngestIssue{ErrorKind::MalformedRecord, reader.file, lineno, "not a JSON object"});
            continue;
        }
        RecordReader rec(obj, builder, reader.file, lineno);
        handle(rec, lineno);
    }
    if (reader.in.bad()) throw Error(ErrorKind::Io, "read failure in " + reader.file);
}

}  // namespace

Corpus ingest(const CorpusFiles& files, std::vector<IngestWarning>* warnings, const NameNormalizer& names) {
    // Open everything up front so a missing file fails before any parsing.
    LineReader journals(files.journals);
    LineReader papers(files.papers);
    LineReader references(files.references);

    CorpusBuilder builder(names);
    builder.set_source_names(papers.file, journals.file, references.file);

    for_each_record(journals, builder, [&](RecordReader& rec, std::size_t line) {
        JournalEntry j;
        j.journal_id = rec.string("journal_id");
        j.canonical_name = rec.string("canonical_name");
        j.name_variants = rec.string_list("name_variants");
        j.discipline = rec.string("discipline");
        j.specialty = rec.optional_string("specialty");
        if (rec.ok()) builder.add_journal(std::move(j), line);
    });

    for_each_record(papers, builder, [&](RecordReader& rec, std::size_t line) {
        PaperRecord p;
        p.paper_id = rec.string("paper_id");
        p.journal_id = rec.string("journal_id");
        p.pub_year = rec.integer("pub_year");
        const std::string doc_type = rec.string("doc_type");
        if (!rec.ok()) return;
        if (auto kind = parse_document_type(doc_type)) {
            p.doc_type = *kind;
        } else {
            p.doc_type = DocumentType::Other;
            if (warnings) {
                warnings->push_back({papers.file, line, "unknown doc_type '" + doc_type + "' mapped to Other"});
            }
        }
        builder.add_paper(std::move(p), line);
    });

    for_each_record(references, builder, [&](RecordReader& rec, std::size_t line) {
        RawReference r;
        r.citing_paper_id = rec.string("citing_paper_id");
        r.raw_cited_string = rec.string("raw_cited_string");
        r.cited_paper_id = rec.optional_string("cited_paper_id");
        r.cited_journal_id = rec.optional_string("cited_journal_id");
        r.cited_year = rec.optional_integer("cited_year");
        if (rec.ok()) builder.add_reference(std::move(r), line);
    });

    return std::move(builder).finalize();
}

Corpus ingest(const std::filesystem::path& papers_path, const std::filesystem::path& journals_path,
              const std::filesystem::path& references_path) {
    return ingest(CorpusFiles{papers_path, journals_path, references_path});
}

namespace {

template <typename T>
nlohmann::ordered_json nullable(const std::optional<T>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    return out;
}

}  // namespace

void export_corpus(const Corpus& corpus, const CorpusFiles& files) {
    using oj = nlohmann::ordered_json;
    {
        auto out = open_out(files.journals);
        for (const auto& j : corpus.journals()) {
            oj o;
            o["journal_id"] = j.journal_id;
            o["canonical_name"] = j.canonical_name;
            o["name_variants"] = j.name_variants;
            o["discipline"] = j.discipline;
            o["specialty"] = nullable(j.specialty);
            out << o.dump() << '\n';
        }
    }
    {
        auto out = open_out(files.papers);
        for (const auto& p : corpus.papers()) {
            oj o;
            o["paper_id"] = p.paper_id;
            o["journal_id"] = p.journal_id;
            o["pub_year"] = p.pub_year;
            o["doc_type"] = to_string(p.doc_type);
            out << o.dump() << '\n';
        }
    }
    {
        auto out = open_out(files.references);
        for (const auto& r : corpus.references()) {
            oj o;
            o["citing_paper_id"] = r.citing_paper_id;
            o["raw_cited_string"] = r.raw_cited_string;
            o["cited_paper_id"] = nullable(r.cited_paper_id);
            o["cited_journal_id"] = nullable(r.cited_journal_id);
            o["cited_year"] = nullable(r.cited_year);
            out << o.dump() << '\n';
        }
    }
}

void export_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    export_corpus(corpus, CorpusFiles::in_directory(dir));
}

double citable_share(const Corpus& corpus, const YearFilter& filter) {
    std::size_t total = 0;
    std::size_t citable_count = 0;
    for (const auto& p : corpus.papers()) {
        if (!filter.accepts(p.pub_year)) continue;
        ++total;
        if (citable(p.doc_type)) ++citable_count;
    }
    if (total == 0) throw Error(ErrorKind::EmptySelection, "no papers in the selected years");
    return static_cast<double>(citable_count) / static_cast<double>(total);
}

}  // namespace citemetrics
