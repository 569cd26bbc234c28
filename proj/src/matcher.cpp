#include "citemetrics/matcher.hpp"

#include <algorithm>
#include <ostream>

namespace citemetrics {

std::string_view to_string(CitationClass c) {
    switch (c) {
        case CitationClass::MatchedCitable: return "MatchedCitable";
        case CitationClass::MatchedNonCitable: return "MatchedNonCitable";
        case CitationClass::UnmatchedJournal: return "UnmatchedJournal";
        case CitationClass::Unresolved: return "Unresolved";
    }
    return "Unresolved";
}

NameRegistry::NameRegistry(const Corpus& corpus, const NameNormalizer& names) {
    const auto& journals = corpus.journals();
    for (std::size_t j = 0; j < journals.size(); ++j) {
        auto add = [&](const std::string& name) {
            auto tokens = names.tokens(name);
            if (tokens.empty()) return;
            max_tokens_ = std::max(max_tokens_, tokens.size());
            std::string key;
            for (const auto& t : tokens) {
                if (!key.empty()) key.push_back(' ');
                key += t;
            }
            auto& owners = keys_[key];
            const auto idx = static_cast<JournalIndex>(j);
            if (std::find(owners.begin(), owners.end(), idx) == owners.end()) owners.push_back(idx);
        };
        add(journals[j].canonical_name);
        for (const auto& v : journals[j].name_variants) add(v);
    }
}

NameRegistry::Match NameRegistry::longest_prefix(const std::vector<std::string>& tokens) const {
    const std::size_t limit = std::min(tokens.size(), max_tokens_);
    std::vector<std::string> prefixes;
    prefixes.reserve(limit);
    std::string key;
    for (std::size_t k = 0; k < limit; ++k) {
        if (k > 0) key.push_back(' ');
        key += tokens[k];
        prefixes.push_back(key);
    }
    for (std::size_t k = limit; k-- > 0;) {
        auto it = keys_.find(prefixes[k]);
        if (it == keys_.end()) continue;
        if (it->second.size() == 1) return {it->second.front(), false};
        return {kNoJournal, true};
    }
    return {};
}

std::optional<Year> extract_year(std::string_view raw) {
    std::size_t i = 0;
    while (i < raw.size()) {
        if (raw[i] < '0' || raw[i] > '9') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < raw.size() && raw[j] >= '0' && raw[j] <= '9') ++j;
        if (j - i == 4) {
            const Year y = (raw[i] - '0') * 1000 + (raw[i + 1] - '0') * 100 + (raw[i + 2] - '0') * 10 + (raw[i + 3] - '0');
            if (y >= 1800 && y <= 2100) return y;
        }
        i = j;
    }
    return std::nullopt;
}

JournalIndex ResolvedCorpus::require_journal(std::string_view journal_id) const {
    auto j = corpus_->journal_index(journal_id);
    if (!j) throw Error(ErrorKind::UnknownJournal, std::string(journal_id));
    return *j;
}

ResolvedCorpus resolve(std::shared_ptr<const Corpus> corpus_ptr, const NameNormalizer& names) {
    ResolvedCorpus out;
    out.corpus_ = std::move(corpus_ptr);
    const Corpus& corpus = *out.corpus_;
    const auto& papers = corpus.papers();
    const auto& refs = corpus.references();
    const auto& paper_journal = corpus.paper_journals();
    const auto& citing = corpus.citing_papers();

    const NameRegistry registry(corpus, names);

    out.classes_.resize(refs.size());
    out.citing_year_.resize(refs.size());
    out.citing_journal_.resize(refs.size());
    out.reference_year_.resize(refs.size());
    out.journal_papers_.resize(corpus.journals().size());
    out.paper_refs_.resize(papers.size());

    for (std::size_t p = 0; p < papers.size(); ++p) {
        out.journal_papers_[paper_journal[p]].push_back(static_cast<PaperIndex>(p));
    }
    for (PaperIndex p = 0; p < papers.size(); ++p) out.paper_refs_[p].reserve(corpus.outgoing_count(p));

    for (std::size_t r = 0; r < refs.size(); ++r) {
        const auto& ref = refs[r];
        const PaperIndex from = citing[r];
        out.citing_year_[r] = papers[from].pub_year;
        out.citing_journal_[r] = paper_journal[from];
        out.paper_refs_[from].push_back(static_cast<std::uint32_t>(r));

        Classification cls;
        std::optional<Year> year;
        if (ref.cited_paper_id) {
            const PaperIndex target = *corpus.paper_index(*ref.cited_paper_id);
            const auto& tp = papers[target];
            cls.kind = citable(tp.doc_type) ? CitationClass::MatchedCitable : CitationClass::MatchedNonCitable;
            cls.paper = target;
            cls.journal = paper_journal[target];
            cls.cited_year = tp.pub_year;
            year = tp.pub_year;
        } else {
            year = ref.cited_year ? ref.cited_year : extract_year(ref.raw_cited_string);
            const auto match = registry.longest_prefix(names.tokens(ref.raw_cited_string));
            if (match.ambiguous) {
                out.ambiguous_.push_back(r);
            } else if (match.journal != kNoJournal && year) {
                cls.kind = CitationClass::UnmatchedJournal;
                cls.journal = match.journal;
                cls.cited_year = *year;
            }
        }
        out.reference_year_[r] = year ? *year : ResolvedCorpus::kNoYear;
        out.classes_[r] = cls;
        ++out.summary_.counts[static_cast<std::size_t>(cls.kind)];
    }
    out.summary_.total = refs.size();
    out.summary_.ambiguous = out.ambiguous_.size();
    return out;
}

ResolvedCorpus resolve(Corpus corpus, const NameNormalizer& names) {
    return resolve(std::make_shared<const Corpus>(std::move(corpus)), names);
}

void write_resolve_report(const ResolveSummary& summary, std::ostream& out) {
    out << "class,count\n";
    for (auto c : kAllCitationClasses) out << to_string(c) << ',' << summary.count(c) << '\n';
    out << "total," << summary.total << '\n';
}

}  // namespace citemetrics
