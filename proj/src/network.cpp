#include "citemetrics/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace citemetrics {

JournalCitationMatrix::JournalCitationMatrix(std::vector<std::string> journal_ids,
                                             std::vector<std::uint64_t> article_counts, Year census_year,
                                             int window_years)
    : ids_(std::move(journal_ids)),
      articles_(std::move(article_counts)),
      rows_(ids_.size()),
      col_sums_(ids_.size(), 0),
      census_year_(census_year),
      window_years_(window_years) {
    if (articles_.size() != ids_.size()) {
        throw Error(ErrorKind::InvalidArgument, "article_counts must have one entry per journal");
    }
}

JournalCitationMatrix JournalCitationMatrix::from_dense(std::vector<std::string> journal_ids,
                                                        const std::vector<std::vector<std::uint64_t>>& counts,
                                                        std::vector<std::uint64_t> article_counts, Year census_year,
                                                        int window_years) {
    JournalCitationMatrix m(std::move(journal_ids), std::move(article_counts), census_year, window_years);
    if (counts.size() != m.size()) throw Error(ErrorKind::InvalidArgument, "dense matrix row count mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].size() != m.size()) throw Error(ErrorKind::InvalidArgument, "dense matrix is not square");
        for (std::size_t j = 0; j < counts[i].size(); ++j) {
            if (counts[i][j] > 0) m.add(i, j, counts[i][j]);
        }
    }
    return m;
}

void JournalCitationMatrix::add(std::size_t citing, std::size_t cited, std::uint64_t count) {
    if (count == 0) return;
    auto& row = rows_.at(citing);
    if (cited >= size()) throw Error(ErrorKind::InvalidArgument, "cited index out of range");
    const auto c = static_cast<std::uint32_t>(cited);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::uint32_t v) { return e.cited < v; });
    if (it != row.end() && it->cited == c) it->count += count;
    else row.insert(it, Entry{c, count});
    col_sums_[cited] += count;
}

std::uint64_t JournalCitationMatrix::count(std::size_t citing, std::size_t cited) const {
    const auto& row = rows_.at(citing);
    const auto c = static_cast<std::uint32_t>(cited);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::uint32_t v) { return e.cited < v; });
    return (it != row.end() && it->cited == c) ? it->count : 0;
}

std::uint64_t JournalCitationMatrix::row_sum(std::size_t citing) const {
    std::uint64_t s = 0;
    for (const auto& e : rows_.at(citing)) s += e.count;
    return s;
}

std::uint64_t JournalCitationMatrix::col_sum(std::size_t cited) const { return col_sums_.at(cited); }

std::optional<std::size_t> JournalCitationMatrix::index_of(std::string_view journal_id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == journal_id) return i;
    }
    return std::nullopt;
}

JournalCitationMatrix JournalCitationMatrix::permuted(const std::vector<std::size_t>& order) const {
    if (order.size() != size()) throw Error(ErrorKind::InvalidArgument, "permutation size mismatch");
    std::vector<std::size_t> position(size());
    std::vector<std::string> ids(size());
    std::vector<std::uint64_t> arts(size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        position[order[k]] = k;
        ids[k] = ids_[order[k]];
        arts[k] = articles_[order[k]];
    }
    JournalCitationMatrix out(std::move(ids), std::move(arts), census_year_, window_years_);
    for (std::size_t i = 0; i < size(); ++i) {
        for (const auto& e : rows_[i]) out.add(position[i], position[e.cited], e.count);
    }
    return out;
}

bool JournalCitationMatrix::operator==(const JournalCitationMatrix& o) const {
    if (ids_ != o.ids_ || articles_ != o.articles_ || census_year_ != o.census_year_ ||
        window_years_ != o.window_years_) {
        return false;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != o.rows_[i].size()) return false;
        for (std::size_t k = 0; k < rows_[i].size(); ++k) {
            if (rows_[i][k].cited != o.rows_[i][k].cited || rows_[i][k].count != o.rows_[i][k].count) return false;
        }
    }
    return true;
}

JournalCitationMatrix build_matrix(const ResolvedCorpus& resolved, Year census_year, int window_years) {
    const auto tallies = tally_all(resolved, census_year, window_years);  // validates arguments
    const auto& journals = resolved.corpus().journals();
    std::vector<std::string> ids;
    std::vector<std::uint64_t> arts;
    ids.reserve(journals.size());
    arts.reserve(journals.size());
    for (std::size_t j = 0; j < journals.size(); ++j) {
        ids.push_back(journals[j].journal_id);
        arts.push_back(tallies[j].n_citable_items);
    }
    JournalCitationMatrix m(std::move(ids), std::move(arts), census_year, window_years);

    const CitationWindow w{census_year, window_years};
    std::unordered_map<std::uint64_t, std::uint64_t> cells;
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& c = classes[r];
        if (!c.has_target() || resolved.citing_year(r) != census_year || !w.contains(c.cited_year)) continue;
        const std::uint64_t key = (static_cast<std::uint64_t>(resolved.citing_journal(r)) << 32) | c.journal;
        ++cells[key];
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(cells.begin(), cells.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [key, n] : sorted) m.add(key >> 32, key & 0xFFFFFFFFu, n);
    return m;
}

void write_matrix_csv(const JournalCitationMatrix& m, std::ostream& out) {
    out << "journal_id";
    for (const auto& id : m.journal_ids()) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.journal_ids()[i];
        std::size_t next = 0;
        for (const auto& e : m.row(i)) {
            for (; next < e.cited; ++next) out << ",0";
            out << ',' << e.count;
            next = e.cited + 1;
        }
        for (; next < m.size(); ++next) out << ",0";
        out << '\n';
    }
}

void RankingParams::validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw Error(ErrorKind::InvalidArgument, "damping must lie in (0,1)");
    if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "max_iterations must be >= 1");
    if (!(sjr_single_journal_cap > 0.0 && sjr_single_journal_cap <= 1.0) ||
        !(sjr_self_citation_cap >= 0.0 && sjr_self_citation_cap <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "SJR caps must be fractions");
    }
}

namespace {

std::vector<double> article_distribution(const std::vector<std::uint64_t>& articles) {
    const double total = std::accumulate(articles.begin(), articles.end(), 0.0,
                                         [](double s, std::uint64_t a) { return s + static_cast<double>(a); });
    std::vector<double> a(articles.size(), 1.0 / static_cast<double>(articles.size()));
    if (total > 0) {
        for (std::size_t i = 0; i < articles.size(); ++i) a[i] = static_cast<double>(articles[i]) / total;
    }
    return a;
}

// Sparse row-stochastic weights over outgoing links; empty row = dangling.
struct Transition {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
};

// Damped power iteration: x <- d * (T^T x + dangling(x) * v) + (1 - d) * v.
std::vector<double> power_iterate(const Transition& t, const std::vector<double>& teleport, const RankingParams& p,
                                  int& iterations) {
    const std::size_t n = teleport.size();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (int it = 1; it <= p.max_iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (t.rows[i].empty()) {
                dangling += x[i];
                continue;
            }
            for (const auto& [j, wgt] : t.rows[i]) next[j] += x[i] * wgt;
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            next[j] = p.damping * (next[j] + dangling * teleport[j]) + (1.0 - p.damping) * teleport[j];
            sum += next[j];
        }
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            next[j] /= sum;
            diff += std::abs(next[j] - x[j]);
        }
        x.swap(next);
        if (diff < p.tolerance) {
            iterations = it;
            return x;
        }
    }
    throw Error(ErrorKind::NonConvergence,
                "no convergence within " + std::to_string(p.max_iterations) + " iterations");
}

}  // namespace

EigenfactorResult eigenfactor(const JournalCitationMatrix& m, const RankingParams& params) {
    params.validate();
    const std::size_t n = m.size();
    if (n == 0) throw Error(ErrorKind::NoCitations, "empty network");

    Transition t;
    t.rows.resize(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t out = 0;
        for (const auto& e : m.row(i)) {
            if (e.cited != i) out += e.count;
        }
        if (out == 0) continue;
        any = true;
        for (const auto& e : m.row(i)) {
            if (e.cited == i) continue;
            t.rows[i].emplace_back(e.cited, static_cast<double>(e.count) / static_cast<double>(out));
        }
    }
    if (!any) throw Error(ErrorKind::NoCitations, "no citations between distinct journals");

    const auto teleport = article_distribution(m.article_counts());
    EigenfactorResult res;
    res.influence = power_iterate(t, teleport, params, res.iterations);

    // Citation flow along real links only.
    std::vector<double> flow(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : t.rows[i]) flow[j] += res.influence[i] * w;
    }
    const double total = std::accumulate(flow.begin(), flow.end(), 0.0);
    if (!(total > 0.0)) throw Error(ErrorKind::NoCitations, "citation flow vanished");
    for (std::size_t j = 0; j < n; ++j) res.scores[m.journal_ids()[j]] = 100.0 * flow[j] / total;
    return res;
}

ArticleInfluenceResult article_influence(const ScoreMap& ef_scores,
                                         const std::map<std::string, std::uint64_t>& article_counts) {
    ArticleInfluenceResult res;
    double ef_total = 0.0;
    double art_total = 0.0;
    for (const auto& [id, ef] : ef_scores) {
        auto it = article_counts.find(id);
        if (it == article_counts.end() || it->second == 0) {
            res.excluded.push_back(id);
            continue;
        }
        ef_total += ef;
        art_total += static_cast<double>(it->second);
    }
    if (art_total == 0.0) throw Error(ErrorKind::ZeroArticles, "no journal has articles in the window");
    if (!(ef_total > 0.0)) throw Error(ErrorKind::NoCitations, "included journals carry no Eigenfactor");
    for (const auto& [id, ef] : ef_scores) {
        auto it = article_counts.find(id);
        if (it == article_counts.end() || it->second == 0) continue;
        res.scores[id] = (ef / ef_total) / (static_cast<double>(it->second) / art_total);
    }
    return res;
}

ArticleInfluenceResult article_influence(const EigenfactorResult& ef, const JournalCitationMatrix& m) {
    std::map<std::string, std::uint64_t> counts;
    for (std::size_t i = 0; i < m.size(); ++i) counts[m.journal_ids()[i]] = m.article_counts()[i];
    return article_influence(ef.scores, counts);
}

std::vector<std::vector<double>> sjr_capped_counts(const JournalCitationMatrix& m, const RankingParams& params) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : m.row(i)) c[i][e.cited] = static_cast<double>(e.count);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double received = static_cast<double>(m.col_sum(j));
        if (received == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double cap = (i == j ? params.sjr_self_citation_cap : params.sjr_single_journal_cap) * received;
            c[i][j] = std::min(c[i][j], cap);
        }
    }
    return c;
}

SjrResult sjr(const JournalCitationMatrix& m, const RankingParams& params) {
    params.validate();
    if (m.window_years() != 3) throw Error(ErrorKind::InvalidArgument, "SJR uses a three-year window");
    const std::size_t n = m.size();
    if (n == 0) throw Error(ErrorKind::NoCitations, "empty network");

    std::uint64_t any = 0;
    for (std::size_t j = 0; j < n; ++j) any += m.col_sum(j);
    if (any == 0) throw Error(ErrorKind::NoCitations, "no citations in window");

    const double art_total = std::accumulate(m.article_counts().begin(), m.article_counts().end(), 0.0,
                                             [](double s, std::uint64_t a) { return s + static_cast<double>(a); });
    if (art_total == 0.0) throw Error(ErrorKind::ZeroArticles, "no citable documents in window");
    const auto share = article_distribution(m.article_counts());

    // Caps only touch entries in columns that receive citations, so work on
    // the sparse rows directly.
    Transition t;
    t.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double out = 0.0;
        std::vector<std::pair<std::uint32_t, double>> capped;
        for (const auto& e : m.row(i)) {
            const double received = static_cast<double>(m.col_sum(e.cited));
            const double cap = (e.cited == i ? params.sjr_self_citation_cap : params.sjr_single_journal_cap) * received;
            const double v = std::min(static_cast<double>(e.count), cap);
            if (v <= 0.0) continue;
            capped.emplace_back(e.cited, v);
            out += v;
        }
        for (auto& [j, v] : capped) v /= out;
        t.rows[i] = std::move(capped);
    }

    SjrResult res;
    res.prestige = power_iterate(t, share, params, res.iterations);
    for (std::size_t j = 0; j < n; ++j) {
        if (m.article_counts()[j] == 0) continue;
        res.scores[m.journal_ids()[j]] = res.prestige[j] / share[j];
    }
    return res;
}

namespace {

struct SnipParts {
    std::vector<std::uint64_t> citations;     // census-year citations to window items
    std::vector<std::uint64_t> citing_papers; // distinct citing papers
    std::vector<std::uint64_t> potential_sum; // sum over citing papers of their in-window indexed refs
    std::vector<std::uint64_t> citable_items;
};

SnipParts snip_parts(const ResolvedCorpus& resolved, Year census_year) {
    const auto tallies = tally_all(resolved, census_year, 3);
    const std::size_t nj = resolved.corpus().journals().size();
    SnipParts parts{std::vector<std::uint64_t>(nj, 0), std::vector<std::uint64_t>(nj, 0),
                    std::vector<std::uint64_t>(nj, 0), std::vector<std::uint64_t>(nj, 0)};
    for (std::size_t j = 0; j < nj; ++j) {
        parts.citations[j] = tallies[j].total_cites();
        parts.citable_items[j] = tallies[j].n_citable_items;
    }
    const CitationWindow w{census_year, 3};
    const auto& papers = resolved.corpus().papers();
    const auto& classes = resolved.classifications();
    std::vector<JournalIndex> targets;
    for (PaperIndex p = 0; p < papers.size(); ++p) {
        if (papers[p].pub_year != census_year) continue;
        targets.clear();
        std::uint64_t in_window = 0;
        for (auto r : resolved.references_of(p)) {
            const auto& c = classes[r];
            if (!c.has_target() || !w.contains(c.cited_year)) continue;
            ++in_window;
            targets.push_back(c.journal);
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (auto j : targets) {
            ++parts.citing_papers[j];
            parts.potential_sum[j] += in_window;
        }
    }
    return parts;
}

double snip_value(const SnipParts& parts, std::size_t j, const std::string& id) {
    if (parts.citable_items[j] == 0) {
        throw Error(ErrorKind::ZeroDenominator, "journal " + id + " has no citable items in the three-year window");
    }
    if (parts.citing_papers[j] == 0) throw Error(ErrorKind::NoCitingPapers, "journal " + id + " is never cited");
    const double rip = static_cast<double>(parts.citations[j]) / static_cast<double>(parts.citable_items[j]);
    const double potential =
        static_cast<double>(parts.potential_sum[j]) / static_cast<double>(parts.citing_papers[j]);
    return rip / potential;
}

}  // namespace

double snip(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year) {
    const JournalIndex j = resolved.require_journal(journal_id);
    return snip_value(snip_parts(resolved, census_year), j, std::string(journal_id));
}

std::vector<std::optional<double>> snip_all(const ResolvedCorpus& resolved, Year census_year) {
    const auto parts = snip_parts(resolved, census_year);
    const auto& journals = resolved.corpus().journals();
    std::vector<std::optional<double>> out(journals.size());
    for (std::size_t j = 0; j < journals.size(); ++j) {
        try {
            out[j] = snip_value(parts, j, journals[j].journal_id);
        } catch (const Error&) {
        }
    }
    return out;
}

std::vector<RankingRow> ranking_report(const ResolvedCorpus& resolved, Year census_year, const RankingParams& params) {
    const auto five = build_matrix(resolved, census_year, 5);
    const auto three = build_matrix(resolved, census_year, 3);
    const auto& journals = resolved.corpus().journals();

    std::vector<RankingRow> rows(journals.size());
    for (std::size_t j = 0; j < journals.size(); ++j) rows[j].journal_id = journals[j].journal_id;

    auto fill = [&](const ScoreMap& scores, std::optional<double> RankingRow::*field) {
        for (auto& row : rows) {
            auto it = scores.find(row.journal_id);
            if (it != scores.end()) row.*field = it->second;
        }
    };

    // NonConvergence propagates; a network without citations just leaves blanks.
    try {
        const auto ef = eigenfactor(five, params);
        fill(ef.scores, &RankingRow::eigenfactor);
        fill(article_influence(ef, five).scores, &RankingRow::article_influence);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonConvergence) throw;
    }
    try {
        fill(sjr(three, params).scores, &RankingRow::sjr);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonConvergence) throw;
    }
    const auto snips = snip_all(resolved, census_year);
    for (std::size_t j = 0; j < rows.size(); ++j) rows[j].snip = snips[j];
    return rows;
}

void write_ranking_csv(const std::vector<RankingRow>& rows, std::ostream& out, int decimals) {
    auto cell = [&](const std::optional<double>& v) { return v ? format_decimal(*v, decimals) : std::string(); };
    out << "journal_id,eigenfactor,article_influence,sjr,snip\n";
    for (const auto& r : rows) {
        out << r.journal_id << ',' << cell(r.eigenfactor) << ',' << cell(r.article_influence) << ',' << cell(r.sjr)
            << ',' << cell(r.snip) << '\n';
    }
}

}  // namespace citemetrics
