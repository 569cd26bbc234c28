#include "citemetrics/indicators.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace citemetrics {

namespace {

void check_args(const ResolvedCorpus& resolved, Year census_year, int window_years) {
    if (window_years < 1) throw Error(ErrorKind::InvalidArgument, "window_years must be >= 1");
    const auto range = resolved.corpus().year_range();
    if (!range.contains(census_year)) {
        throw Error(ErrorKind::InvalidArgument, "census year " + std::to_string(census_year) +
                                                    " outside corpus range " + std::to_string(range.min_year) +
                                                    "-" + std::to_string(range.max_year));
    }
}

void count_items(const ResolvedCorpus& resolved, JournalIndex j, const CitationWindow& w, CitationTally& t) {
    const auto& papers = resolved.corpus().papers();
    for (PaperIndex p : resolved.papers_of(j)) {
        const auto& rec = papers[p];
        if (!w.contains(rec.pub_year)) continue;
        ++t.n_all_items;
        if (citable(rec.doc_type)) ++t.n_citable_items;
    }
}

void add_citation(CitationTally& t, CitationClass kind, bool self) {
    switch (kind) {
        case CitationClass::MatchedCitable: ++t.cites_matched_citable; break;
        case CitationClass::MatchedNonCitable: ++t.cites_matched_noncitable; break;
        case CitationClass::UnmatchedJournal: ++t.cites_unmatched; break;
        case CitationClass::Unresolved: return;
    }
    if (self) ++t.self_citations;
}

double ratio(std::uint64_t num, std::uint64_t den, const char* what) {
    if (den == 0) throw Error(ErrorKind::ZeroDenominator, what);
    return static_cast<double>(num) / static_cast<double>(den);
}

// Census-year citations per cited paper (MatchedCitable only).
std::vector<std::uint32_t> incoming_citable(const ResolvedCorpus& resolved, Year census_year) {
    std::vector<std::uint32_t> in(resolved.corpus().papers().size(), 0);
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        if (classes[r].kind != CitationClass::MatchedCitable) continue;
        if (resolved.citing_year(r) != census_year) continue;
        ++in[classes[r].paper];
    }
    return in;
}

std::vector<std::uint32_t> window_counts(const ResolvedCorpus& resolved, JournalIndex j, const CitationWindow& w,
                                         const std::vector<std::uint32_t>& incoming) {
    const auto& papers = resolved.corpus().papers();
    std::vector<std::uint32_t> out;
    for (PaperIndex p : resolved.papers_of(j)) {
        const auto& rec = papers[p];
        if (w.contains(rec.pub_year) && citable(rec.doc_type)) out.push_back(incoming[p]);
    }
    return out;
}

template <typename F>
std::optional<double> guarded(F&& f) {
    try {
        return f();
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

CitationTally tally(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year, int window_years) {
    const JournalIndex j = resolved.require_journal(journal_id);
    check_args(resolved, census_year, window_years);
    const CitationWindow w{census_year, window_years};

    CitationTally t;
    t.journal_id = std::string(journal_id);
    t.census_year = census_year;
    t.window_years = window_years;
    count_items(resolved, j, w, t);

    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& c = classes[r];
        if (c.journal != j || !c.has_target()) continue;
        if (resolved.citing_year(r) != census_year || !w.contains(c.cited_year)) continue;
        add_citation(t, c.kind, resolved.citing_journal(r) == j);
    }
    return t;
}

std::vector<CitationTally> tally_all(const ResolvedCorpus& resolved, Year census_year, int window_years) {
    check_args(resolved, census_year, window_years);
    const CitationWindow w{census_year, window_years};
    const auto& journals = resolved.corpus().journals();

    std::vector<CitationTally> out(journals.size());
    for (std::size_t j = 0; j < journals.size(); ++j) {
        out[j].journal_id = journals[j].journal_id;
        out[j].census_year = census_year;
        out[j].window_years = window_years;
        count_items(resolved, static_cast<JournalIndex>(j), w, out[j]);
    }
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& c = classes[r];
        if (!c.has_target() || resolved.citing_year(r) != census_year || !w.contains(c.cited_year)) continue;
        add_citation(out[c.journal], c.kind, resolved.citing_journal(r) == c.journal);
    }
    return out;
}

double jif_wos_derived(const CitationTally& t) {
    return ratio(t.total_cites(), t.n_citable_items, "no citable items in window");
}

double symmetric_if(const CitationTally& t) {
    return ratio(t.cites_matched_citable, t.n_citable_items, "no citable items in window");
}

double jif_no_self(const CitationTally& t) {
    return ratio(t.total_cites() - t.self_citations, t.n_citable_items, "no citable items in window");
}

double self_citation_rate(const CitationTally& t) {
    if (t.total_cites() == 0) throw Error(ErrorKind::NoCitations, "journal " + t.journal_id + " received no citations");
    return static_cast<double>(t.self_citations) / static_cast<double>(t.total_cites());
}

double pct_increase(double reference_jif, double symmetric) {
    if (!(symmetric > 0.0)) throw Error(ErrorKind::ZeroDenominator, "symmetric impact factor is zero");
    return 100.0 * (reference_jif - symmetric) / symmetric;
}

double jif5(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year) {
    return jif_wos_derived(tally(resolved, journal_id, census_year, 5));
}

double citescore(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year) {
    const auto t = tally(resolved, journal_id, census_year, 3);
    return ratio(t.total_cites(), t.n_all_items, "no items of any type in the three-year window");
}

std::vector<std::uint32_t> per_paper_citations(const ResolvedCorpus& resolved, std::string_view journal_id,
                                               Year census_year, int window_years) {
    const JournalIndex j = resolved.require_journal(journal_id);
    check_args(resolved, census_year, window_years);
    const CitationWindow w{census_year, window_years};
    const auto& papers = resolved.corpus().papers();

    // Only this journal's window papers matter; map them to slots.
    std::vector<PaperIndex> members;
    for (PaperIndex p : resolved.papers_of(j)) {
        if (w.contains(papers[p].pub_year) && citable(papers[p].doc_type)) members.push_back(p);
    }
    std::vector<std::uint32_t> counts(members.size(), 0);
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& c = classes[r];
        if (c.kind != CitationClass::MatchedCitable || c.journal != j) continue;
        if (resolved.citing_year(r) != census_year) continue;
        auto it = std::lower_bound(members.begin(), members.end(), c.paper);
        if (it != members.end() && *it == c.paper) ++counts[static_cast<std::size_t>(it - members.begin())];
    }
    return counts;
}

double median_of(std::vector<std::uint32_t> counts) {
    if (counts.empty()) throw Error(ErrorKind::EmptyWindow, "no citable items");
    const std::size_t n = counts.size();
    const std::size_t mid = n / 2;
    std::nth_element(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(mid), counts.end());
    const double upper = counts[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

double median_cites(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year, int window_years) {
    auto counts = per_paper_citations(resolved, journal_id, census_year, window_years);
    if (counts.empty()) {
        throw Error(ErrorKind::EmptyWindow, "journal " + std::string(journal_id) + " has no citable items in window");
    }
    return median_of(std::move(counts));
}

namespace {

IndicatorReport assemble(const CitationTally& main, const CitationTally& two, const CitationTally& five,
                         const CitationTally& three, const std::vector<std::uint32_t>& window_counts_for_median) {
    IndicatorReport rep;
    rep.journal_id = main.journal_id;
    rep.census_year = main.census_year;
    rep.jif2 = guarded([&] { return jif_wos_derived(two); });
    rep.jif5 = guarded([&] { return jif_wos_derived(five); });
    rep.jif_wos_derived = guarded([&] { return jif_wos_derived(main); });
    rep.symmetric_if = guarded([&] { return symmetric_if(main); });
    rep.jif_no_self = guarded([&] { return jif_no_self(main); });
    rep.citescore = guarded([&] { return ratio(three.total_cites(), three.n_all_items, "citescore"); });
    if (!window_counts_for_median.empty()) rep.median_cites = median_of(window_counts_for_median);
    rep.self_citation_rate = guarded([&] { return self_citation_rate(main); });
    if (rep.jif_wos_derived && rep.symmetric_if) {
        rep.pct_increase = guarded([&] { return pct_increase(*rep.jif_wos_derived, *rep.symmetric_if); });
    }
    return rep;
}

}  // namespace

IndicatorReport compute_report(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year,
                               int window_years) {
    const auto main = tally(resolved, journal_id, census_year, window_years);
    const auto two = tally(resolved, journal_id, census_year, 2);
    const auto five = tally(resolved, journal_id, census_year, 5);
    const auto three = tally(resolved, journal_id, census_year, 3);
    return assemble(main, two, five, three, per_paper_citations(resolved, journal_id, census_year, window_years));
}

std::vector<IndicatorReport> report_all(const ResolvedCorpus& resolved, Year census_year, int window_years) {
    const auto main = tally_all(resolved, census_year, window_years);
    const auto two = tally_all(resolved, census_year, 2);
    const auto five = tally_all(resolved, census_year, 5);
    const auto three = tally_all(resolved, census_year, 3);
    const auto incoming = incoming_citable(resolved, census_year);
    const CitationWindow w{census_year, window_years};

    std::vector<IndicatorReport> out;
    out.reserve(main.size());
    for (std::size_t j = 0; j < main.size(); ++j) {
        out.push_back(assemble(main[j], two[j], five[j], three[j],
                               window_counts(resolved, static_cast<JournalIndex>(j), w, incoming)));
    }
    return out;
}

std::string format_decimal(double value, int decimals) {
    if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    const double scale = std::pow(10.0, decimals);
    // nearbyint honours the current rounding mode, which defaults to ties-to-even.
    double rounded = std::nearbyint(value * scale) / scale;
    if (rounded == 0.0) rounded = 0.0;  // no "-0.000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

namespace {

std::string cell(const std::optional<double>& v, int decimals) { return v ? format_decimal(*v, decimals) : ""; }

nlohmann::ordered_json json_value(const std::optional<double>& v, int decimals) {
    if (!v || !std::isfinite(*v)) return nullptr;
    const double scale = std::pow(10.0, decimals);
    double rounded = std::nearbyint(*v * scale) / scale;
    if (rounded == 0.0) rounded = 0.0;
    return rounded;
}

}  // namespace

void write_report_csv(const std::vector<IndicatorReport>& reports, std::ostream& out, int decimals) {
    out << kReportCsvHeader << '\n';
    for (const auto& r : reports) {
        out << r.journal_id << ',' << r.census_year << ',' << cell(r.jif2, decimals) << ',' << cell(r.jif5, decimals)
            << ',' << cell(r.jif_wos_derived, decimals) << ',' << cell(r.symmetric_if, decimals) << ','
            << cell(r.jif_no_self, decimals) << ',' << cell(r.citescore, decimals) << ','
            << cell(r.median_cites, decimals) << ',' << cell(r.self_citation_rate, decimals) << ','
            << cell(r.pct_increase, decimals) << '\n';
    }
}

void write_report_json(const std::vector<IndicatorReport>& reports, std::ostream& out, int decimals) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json o;
        o["journal_id"] = r.journal_id;
        o["census_year"] = r.census_year;
        o["jif2"] = json_value(r.jif2, decimals);
        o["jif5"] = json_value(r.jif5, decimals);
        o["jif_wos_derived"] = json_value(r.jif_wos_derived, decimals);
        o["symmetric_if"] = json_value(r.symmetric_if, decimals);
        o["jif_no_self"] = json_value(r.jif_no_self, decimals);
        o["citescore"] = json_value(r.citescore, decimals);
        o["median_cites"] = json_value(r.median_cites, decimals);
        o["self_citation_rate"] = json_value(r.self_citation_rate, decimals);
        o["pct_increase"] = json_value(r.pct_increase, decimals);
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace citemetrics
