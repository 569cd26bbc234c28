#include "citemetrics/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "citemetrics/synth.hpp"

namespace citemetrics {

const std::vector<CitationBreakdown>& table1_breakdowns() {
    // Review and front-matter item counts are not published; they are
    // fixture choices and do not enter any published ratio.
    static const std::vector<CitationBreakdown> rows = {
        {"CELL", "Cell", 20885, 3068, 601, 2016, 869, 70, 250, 30.410},
        {"NCHEMBIO", "Nature Chemical Biology", 3263, 378, 217, 356, 268, 15, 120, 15.066},
        {"PLOSBIOL", "PLOS Biology", 3088, 6, 237, 290, 384, 2, 150, 9.797},
        {"FASEBJ", "FASEB Journal", 3650, 235, 203, 802, 881, 30, 200, 5.498},
        {"NATURE", "Nature", 55380, 3925, 5067, 6047, 1784, 90, 2500, 40.140},
        {"SCIENCE", "Science", 45708, 4886, 5657, 6340, 1721, 100, 2500, 37.210},
    };
    return rows;
}

const SelfCitationCounts& jhep_counts() {
    static const SelfCitationCounts c{"JHEP", "Journal of High Energy Physics", 18651, 9285, 3000};
    return c;
}

const std::vector<InflationTarget>& inflation_targets() {
    // Journal totals are fixture choices consistent with the published shares
    // (0.8%, 1.3%, 1.8% of journals above 10).
    static const std::vector<InflationTarget> t = {
        {1997, 6125, 1.125, 49},
        {2007, 8077, 1.707, 105},
        {2016, 11167, 2.178, 201},
    };
    return t;
}

const std::vector<DisciplineTarget>& discipline_targets() {
    static const std::vector<DisciplineTarget> t = {
        {"Biology", 1.683, 22.81, 48.99, 34.45, 14.72},
        {"Biomedical Research", 3.526, 46.6, 48.94, 43.19, 10.26},
        {"Chemistry", 2.768, 47.93, 46.37, 41.31, 10.37},
        {"Clinical Medicine", 2.976, 187.04, 41.94, 34.78, 9.77},
        {"Earth and Space", 2.173, 30.73, 53.71, 38.67, 13.06},
        {"Engineering and Technology", 1.989, 39.74, 36.35, 24.77, 10.44},
        {"Health", 1.647, 17.69, 39.08, 24.52, 9.86},
        {"Mathematics", 1.017, 9.44, 26.56, 16.53, 16.65},
        {"Physics", 2.699, 37.85, 36.57, 29.58, 12.55},
        {"Professional Fields", 1.565, 11.12, 53.51, 27.68, 13.09},
        {"Psychology", 2.050, 19.95, 54.56, 38.30, 13.00},
        {"Social Sciences", 1.199, 6.66, 49.09, 21.74, 15.12},
    };
    return t;
}

namespace {

// Splits `total` over `n` slots along lognormal quantiles (ascending), summing
// exactly to `total`.
std::vector<std::uint64_t> skewed_split(std::uint64_t total, std::size_t n, double sigma) {
    std::vector<std::uint64_t> out(n, 0);
    if (n == 0) return out;
    const boost::math::normal_distribution<double> z;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(sigma * boost::math::quantile(z, (static_cast<double>(i) + 0.5) / static_cast<double>(n)));
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<std::uint64_t>(std::floor(static_cast<double>(total) * w[i] / sum));
        used += out[i];
    }
    for (std::size_t i = 0; used < total; ++used, ++i) ++out[n - 1 - i % n];
    return out;
}

std::string paper_id(const std::string& journal, Year y, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "-%d-%04zu", y, n);
    return journal + buf;
}

std::string upper(std::string s) {
    for (auto& c : s) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return s;
}

// References keyed by citing position so they can be emitted grouped by paper.
struct PendingRef {
    std::size_t citing = 0;
    RawReference ref;
};

void emit(CorpusBuilder& b, std::vector<PendingRef>& refs) {
    std::stable_sort(refs.begin(), refs.end(), [](const PendingRef& a, const PendingRef& c) { return a.citing < c.citing; });
    b.reserve(0, refs.size());
    for (auto& r : refs) b.add_reference(std::move(r.ref));
}

constexpr DocumentType kFrontMatter[] = {DocumentType::Editorial, DocumentType::Letter, DocumentType::NewsItem,
                                         DocumentType::Obituary};

}  // namespace

Table1Fixture fixture_table1() {
    Table1Fixture fx;
    CorpusBuilder b;
    const std::map<std::string, std::vector<std::string>> variants = {
        {"CELL", {"Cell"}},
        {"NCHEMBIO", {"Nat. Chem. Biol."}},
        {"PLOSBIOL", {"PLoS Biol."}},
        {"FASEBJ", {"FASEB J."}},
        {"NATURE", {"Nat."}},
        {"SCIENCE", {"Sci."}},
        {"JHEP", {"J. High Energy Phys.", "JHEP"}},
    };
    auto discipline = [](const std::string& id) {
        if (id == "NATURE" || id == "SCIENCE") return std::string("Multidisciplinary");
        if (id == "JHEP") return std::string("Physics");
        return std::string("Biomedical Research");
    };
    for (const auto& row : table1_breakdowns()) {
        b.add_journal({row.journal_id, row.name, variants.at(row.journal_id), discipline(row.journal_id), std::nullopt});
        fx.jcr_jif[row.journal_id] = row.jcr_jif;
    }
    const auto& jhep = jhep_counts();
    b.add_journal({jhep.journal_id, jhep.name, variants.at(jhep.journal_id), "Physics", std::nullopt});

    constexpr std::size_t kPoolJournals = 8;
    constexpr std::size_t kPoolPapersPerJournal = 500;
    constexpr std::size_t kJhepCitingPapers = 1600;
    std::vector<std::string> pool;
    for (std::size_t j = 0; j < kPoolJournals; ++j) {
        const std::string id = "POOL" + std::to_string(j + 1);
        b.add_journal({id, "Citing Pool " + synthetic_code(j), {}, "Multidisciplinary", std::nullopt});
        for (std::size_t n = 1; n <= kPoolPapersPerJournal; ++n) {
            pool.push_back(paper_id(id, 2016, n));
        }
    }

    std::vector<std::string> citing_ids = pool;
    std::vector<PendingRef> refs;
    std::size_t next_pool = 0;
    auto pool_citer = [&]() { return next_pool++ % pool.size(); };

    auto add_matched = [&](const std::string& journal, const std::string& display, const std::string& cited,
                           Year y, std::size_t citing) {
        RawReference r;
        r.citing_paper_id = citing_ids[citing];
        r.raw_cited_string = display + " " + std::to_string(y);
        r.cited_paper_id = cited;
        r.cited_journal_id = journal;
        r.cited_year = y;
        refs.push_back({citing, std::move(r)});
    };

    for (const auto& row : table1_breakdowns()) {
        const auto& variant = variants.at(row.journal_id).front();
        const std::size_t articles = row.citable_items - row.review_items;
        std::size_t serial = 0;
        auto add_items = [&](std::size_t count, auto type_of, std::uint64_t cites) {
            const auto split = skewed_split(cites, count, 1.1);
            for (std::size_t i = 0; i < count; ++i) {
                const Year y = 2014 + static_cast<Year>(serial % 2);
                const std::string id = paper_id(row.journal_id, y, ++serial);
                b.add_paper({id, row.journal_id, y, type_of(i)});
                for (std::uint64_t c = 0; c < split[i]; ++c) {
                    add_matched(row.journal_id, c % 2 ? row.name : variant, id, y, pool_citer());
                }
            }
        };
        add_items(articles, [](std::size_t) { return DocumentType::Article; }, row.article_cites);
        add_items(row.review_items, [](std::size_t) { return DocumentType::Review; }, row.review_cites);
        add_items(row.noncitable_items, [](std::size_t i) { return kFrontMatter[i % std::size(kFrontMatter)]; },
                  row.noncitable_cites);
        for (std::uint64_t u = 0; u < row.unmatched_cites; ++u) {
            const Year y = 2014 + static_cast<Year>(u % 2);
            RawReference r;
            const std::size_t citing = pool_citer();
            r.citing_paper_id = citing_ids[citing];
            char tail[48];
            std::snprintf(tail, sizeof tail, " %d V%d P%llu", y, y - 1900 + 100, 1 + (u * 13) % 999ULL);
            r.raw_cited_string = upper(u % 2 ? row.name : variant) + tail;
            if (u % 2 == 0) r.cited_year = y;
            refs.push_back({citing, std::move(r)});
        }
    }

    // JHEP: every citation matched to an article; self-citations come from
    // the journal's own census-year papers.
    std::vector<std::string> jhep_items;
    for (std::size_t i = 0; i < jhep.citable_items; ++i) {
        const Year y = 2014 + static_cast<Year>(i % 2);
        jhep_items.push_back(paper_id(jhep.journal_id, y, i + 1));
        b.add_paper({jhep_items.back(), jhep.journal_id, y, DocumentType::Article});
    }
    const std::size_t jhep_citing_base = citing_ids.size();
    for (std::size_t n = 1; n <= kJhepCitingPapers; ++n) {
        citing_ids.push_back(paper_id(jhep.journal_id, 2016, jhep.citable_items + n));
    }
    const auto jhep_split = skewed_split(jhep.citations, jhep_items.size(), 1.0);
    std::uint64_t emitted = 0;
    for (std::size_t i = 0; i < jhep_items.size(); ++i) {
        const Year y = 2014 + static_cast<Year>(i % 2);
        for (std::uint64_t c = 0; c < jhep_split[i]; ++c, ++emitted) {
            const std::size_t citing = emitted < jhep.self_citations
                                           ? jhep_citing_base + emitted % kJhepCitingPapers
                                           : pool_citer();
            add_matched(jhep.journal_id, c % 2 ? jhep.name : "J. High Energy Phys.", jhep_items[i], y, citing);
        }
    }

    for (std::size_t i = 0; i < pool.size(); ++i) {
        b.add_paper({pool[i], "POOL" + std::to_string(i / kPoolPapersPerJournal + 1), 2016, DocumentType::Article});
    }
    for (std::size_t n = jhep_citing_base; n < citing_ids.size(); ++n) {
        b.add_paper({citing_ids[n], jhep.journal_id, 2016, DocumentType::Article});
    }
    emit(b, refs);
    fx.corpus = std::move(b).finalize();
    return fx;
}

std::vector<InflationSnapshot> fixture_inflation() {
    constexpr std::int64_t kCap = 9999;  // thousandths; "above 10" is strict
    std::vector<InflationSnapshot> out;
    for (const auto& t : inflation_targets()) {
        const auto total = static_cast<std::int64_t>(std::llround(t.mean_jif * 1000.0)) * static_cast<std::int64_t>(t.journals);
        std::vector<std::int64_t> values;
        // Journals above 10: spread over (10, 40].
        for (std::size_t i = 0; i < t.above_ten; ++i) {
            values.push_back(40000 - static_cast<std::int64_t>(i * 29000 / std::max<std::size_t>(t.above_ten, 1)));
        }
        const std::int64_t above_sum = std::accumulate(values.begin(), values.end(), std::int64_t{0});
        const std::size_t n = t.journals - t.above_ten;
        std::int64_t rest = total - above_sum;
        const auto shares = skewed_split(static_cast<std::uint64_t>(rest), n, 0.8);
        std::vector<std::int64_t> tail(shares.rbegin(), shares.rend());  // descending
        std::int64_t spill = 0;
        for (auto& v : tail) {
            if (v > kCap) {
                spill += v - kCap;
                v = kCap;
            }
        }
        // Re-spread capped excess over the smallest values, one thousandth at a time.
        for (std::size_t i = n; spill > 0; --spill) {
            i = i == 0 ? n - 1 : i - 1;
            while (tail[i] >= kCap) i = i == 0 ? n - 1 : i - 1;
            ++tail[i];
        }
        values.insert(values.end(), tail.begin(), tail.end());

        InflationSnapshot snap;
        snap.year = t.year;
        for (std::size_t i = 0; i < values.size(); ++i) {
            char id[32];
            std::snprintf(id, sizeof id, "JCR%05zu", i + 1);
            IndicatorReport r;
            r.journal_id = id;
            r.census_year = t.year;
            r.jif2 = static_cast<double>(values[i]) / 1000.0;
            r.jif_wos_derived = r.jif2;
            snap.reports.push_back(std::move(r));
        }
        out.push_back(std::move(snap));
    }
    return out;
}

Corpus fixture_disciplines() {
    constexpr Year kCensus = 2016;
    constexpr std::size_t kJournals = 100;
    constexpr std::size_t kPapers = 400;
    constexpr std::size_t kLargeItems = 100;  // journals 0 and 1; the rest have 2

    CorpusBuilder b;
    std::vector<PendingRef> refs;
    std::vector<std::string> citing_ids;
    std::vector<PaperRecord> papers;
    const auto& targets = discipline_targets();

    b.add_journal({"CITEPOOL", "Citing Pool Zuzu", {}, "Citing Pool", std::nullopt});
    std::size_t pool_papers = 0;
    constexpr std::size_t kRefsPerPoolPaper = 60;
    std::uint64_t pool_refs = 0;
    std::size_t current_pool = 0;
    auto pool_citer = [&]() {
        if (pool_refs++ % kRefsPerPoolPaper == 0) {
            ++pool_papers;
            citing_ids.push_back(paper_id("CITEPOOL", kCensus, pool_papers));
            papers.push_back({citing_ids.back(), "CITEPOOL", kCensus, DocumentType::Article});
            current_pool = citing_ids.size() - 1;
        }
        return current_pool;
    };

    for (std::size_t d = 0; d < targets.size(); ++d) {
        const auto& t = targets[d];
        char prefix[8];
        std::snprintf(prefix, sizeof prefix, "D%02zuJ", d + 1);
        std::vector<std::string> ids;
        std::vector<std::string> names;
        for (std::size_t k = 0; k < kJournals; ++k) {
            char num[8];
            std::snprintf(num, sizeof num, "%03zu", k + 1);
            ids.push_back(prefix + std::string(num));
            names.push_back("Journal of " + t.discipline + " " + synthetic_code(d * kJournals + k));
            b.add_journal({ids.back(), names.back(), {}, t.discipline, std::nullopt});
        }

        // JIF values in thousandths: the maximum, one remainder journal on a
        // 0.01 grid, and 98 journals on a 0.5 grid, summing to mean * 100.
        const auto total = std::llround(t.mean_jif * 1000.0) * static_cast<long long>(kJournals);
        const auto max_milli = std::llround(t.max_jif * 1000.0);
        const long long rest = total - max_milli;
        const long long base = rest / static_cast<long long>(kJournals - 1);
        const long long halves = (rest - base) / 500;
        const long long remainder = rest - halves * 500;
        std::vector<long long> cites(kJournals);
        cites[0] = max_milli * static_cast<long long>(kLargeItems) / 1000;
        cites[1] = remainder * static_cast<long long>(kLargeItems) / 1000;
        for (std::size_t k = 2; k < kJournals; ++k) {
            const long long share = halves / static_cast<long long>(kJournals - 2) +
                                    (static_cast<long long>(k - 2) < halves % static_cast<long long>(kJournals - 2));
            cites[k] = share;  // two items: JIF = share / 2 = share * 0.5
        }

        // Window papers and their reference lists.
        std::vector<std::size_t> window;
        auto add_window_paper = [&](std::size_t k, Year y, std::size_t n, DocumentType type) {
            citing_ids.push_back(paper_id(ids[k], y, n));
            papers.push_back({citing_ids.back(), ids[k], y, type});
            window.push_back(citing_ids.size() - 1);
            return citing_ids.back();
        };
        for (std::size_t k = 0; k < kJournals; ++k) {
            const std::size_t items = k < 2 ? kLargeItems : 2;
            std::vector<std::string> item_ids;
            for (std::size_t i = 0; i < items; ++i) {
                item_ids.push_back(add_window_paper(k, 2014 + static_cast<Year>(i % 2), i + 1, DocumentType::Article));
            }
            if (k >= 2 && k < 6) add_window_paper(k, 2014, items + 1, DocumentType::Editorial);
            const auto split = skewed_split(static_cast<std::uint64_t>(cites[k]), items, 0.9);
            for (std::size_t i = 0; i < items; ++i) {
                for (std::uint64_t c = 0; c < split[i]; ++c) {
                    const std::size_t citing = pool_citer();
                    const Year y = 2014 + static_cast<Year>(i % 2);
                    RawReference r;
                    r.citing_paper_id = citing_ids[citing];
                    r.raw_cited_string = names[k] + " " + std::to_string(y);
                    r.cited_paper_id = item_ids[i];
                    r.cited_journal_id = ids[k];
                    r.cited_year = y;
                    refs.push_back({citing, std::move(r)});
                }
            }
        }

        const auto n_refs = static_cast<std::size_t>(std::llround(t.mean_refs * kPapers));
        const auto n_indexed = static_cast<std::size_t>(std::llround(t.mean_refs_to_indexed * kPapers));
        const std::size_t n_dated = (n_indexed + 99) / 100 * 100;
        const auto age_sum = static_cast<long long>(std::llround(t.mean_ref_age * 100.0)) *
                             static_cast<long long>(n_dated / 100);
        const long long age_base = age_sum / static_cast<long long>(n_dated);
        const long long age_extra = age_sum % static_cast<long long>(n_dated);
        const long long spread = std::min<long long>(age_base, 3);
        // Stride permutation interleaves the three kinds of reference across papers.
        std::size_t stride = 7919;
        while (std::gcd(stride, n_refs) != 1) stride += 2;
        std::size_t g = 0;
        for (std::size_t p = 0; p < window.size(); ++p) {
            const std::size_t count = n_refs / kPapers + (p < n_refs % kPapers);
            const Year pub = papers[window[p]].pub_year;
            for (std::size_t c = 0; c < count; ++c, ++g) {
                const std::size_t slot = (g * stride) % n_refs;
                RawReference r;
                r.citing_paper_id = citing_ids[window[p]];
                if (slot < n_dated) {
                    const auto s = static_cast<long long>(slot);
                    const long long age = age_base + (s < age_extra) + (s % 2 ? -spread : spread);
                    const Year y = pub - static_cast<Year>(age);
                    r.cited_year = y;
                    if (slot < n_indexed) {
                        r.raw_cited_string = names[slot % kJournals] + ", " + std::to_string(y);
                    } else {
                        r.raw_cited_string = "Monograph " + synthetic_code(slot % 4900) + " Press, " + std::to_string(y);
                    }
                } else {
                    r.raw_cited_string = "Unpublished data";
                }
                refs.push_back({window[p], std::move(r)});
            }
        }
    }
    for (auto& p : papers) b.add_paper(std::move(p));
    emit(b, refs);
    return std::move(b).finalize();
}

}  // namespace citemetrics
