#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/random/uniform_int_distribution.hpp>
#include <gtest/gtest.h>

#include "citemetrics/fixtures.hpp"
#include "citemetrics/network.hpp"
#include "citemetrics/synth.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace citemetrics;
using testing_support::MiniCorpus;

namespace {

using Dense = std::vector<std::vector<std::uint64_t>>;

std::vector<std::string> ids(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("J" + std::to_string(i));
    return out;
}

Eigen::VectorXd shares(const std::vector<std::uint64_t>& articles) {
    Eigen::VectorXd a(static_cast<Eigen::Index>(articles.size()));
    double total = 0;
    for (auto x : articles) total += static_cast<double>(x);
    for (std::size_t i = 0; i < articles.size(); ++i) {
        a[static_cast<Eigen::Index>(i)] = total > 0 ? static_cast<double>(articles[i]) / total : 1.0 / static_cast<double>(articles.size());
    }
    return a;
}

// Stationary vector of the full Google matrix built from row weights `w`
// (dangling rows teleport by `a`), via a dense eigendecomposition.
Eigen::VectorXd dense_stationary(const Eigen::MatrixXd& w, const Eigen::VectorXd& a, double damping) {
    const Eigen::Index n = w.rows();
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double out = w.row(i).sum();
        Eigen::RowVectorXd row = out > 0 ? Eigen::RowVectorXd(w.row(i) / out) : Eigen::RowVectorXd(a.transpose());
        g.row(i) = damping * row + (1.0 - damping) * a.transpose();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(g.transpose());
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < n; ++k) {
        if (std::abs(es.eigenvalues()[k] - 1.0) < std::abs(es.eigenvalues()[best] - 1.0)) best = k;
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    return v / v.sum();
}

// Eigenfactor by its definition: self-citations removed, stationary
// distribution, then the share of flow each journal receives along real links.
std::vector<double> dense_eigenfactor(const Dense& c, const std::vector<std::uint64_t>& articles, double damping) {
    const auto n = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) w(i, j) = static_cast<double>(c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    }
    const auto pi = dense_stationary(w, shares(articles), damping);
    Eigen::VectorXd flow = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double out = w.row(i).sum();
        if (out > 0) flow += pi[i] * w.row(i).transpose() / out;
    }
    flow *= 100.0 / flow.sum();
    return {flow.data(), flow.data() + n};
}

Dense random_dense(Rng& rng, std::size_t n, int max_count, int zero_odds) {
    Dense c(n, std::vector<std::uint64_t>(n, 0));
    boost::random::uniform_int_distribution<int> count(0, max_count);
    boost::random::uniform_int_distribution<int> zero(0, zero_odds);
    for (auto& row : c) {
        for (auto& v : row) v = zero(rng) == 0 ? 0 : static_cast<std::uint64_t>(count(rng));
    }
    return c;
}

std::vector<std::uint64_t> random_articles(Rng& rng, std::size_t n) {
    boost::random::uniform_int_distribution<int> d(1, 200);
    std::vector<std::uint64_t> out(n);
    for (auto& v : out) v = static_cast<std::uint64_t>(d(rng));
    return out;
}

JournalCitationMatrix ring(std::size_t n, std::size_t window = 5) {
    Dense c(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        c[i][(i + 1) % n] = 10;
        c[i][(i + n - 1) % n] = 10;
        c[i][i] = 3;
    }
    return JournalCitationMatrix::from_dense(ids(n), c, std::vector<std::uint64_t>(n, 50), 2016,
                                             static_cast<int>(window));
}

}  // namespace

TEST(Network, TwoJournalsCitingEachOther) {
    const auto r = MiniCorpus()
                       .journal("A")
                       .journal("B")
                       .paper("a0", "A", 2015)
                       .paper("b0", "B", 2015)
                       .paper("a1", "A", 2016)
                       .paper("b1", "B", 2016)
                       .cite("a1", "b0")
                       .cite("b1", "a0")
                       .resolved();
    const auto m = build_matrix(r, 2016, 2);
    EXPECT_EQ(m, JournalCitationMatrix::from_dense({"A", "B"}, {{0, 1}, {1, 0}}, {1, 1}, 2016, 2));
    std::ostringstream out;
    write_matrix_csv(m, out);
    EXPECT_EQ(out.str(), "journal_id,A,B\nA,0,1\nB,1,0\n");
}

TEST(Network, JhepRecipientView) {
    const auto r = resolve(fixture_table1().corpus);
    const auto m = build_matrix(r, 2016, 2);
    const auto j = *m.index_of("JHEP");
    EXPECT_EQ(m.count(j, j), 9285u);
    EXPECT_EQ(m.col_sum(j), 18651u);
}

TEST(Network, MatrixMatchesPairwiseOracle) {
    ScenarioSpec spec;
    spec.seed = 50;
    spec.first_year = 2012;
    JournalSpec js;
    js.count = 50;
    js.n_papers_per_year = 4;
    js.unmatched_fraction = 0.1;
    spec.journals.push_back(js);
    const auto corpus = generate(spec);
    const auto r = resolve(corpus);
    const auto targets = oracle::classify(corpus);
    for (int window : {2, 3, 5}) {
        const auto m = build_matrix(r, 2016, window);
        const auto expected = oracle::matrix(targets, 2016, window);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) {
                auto it = expected.find({m.journal_ids()[i], m.journal_ids()[j]});
                const std::uint64_t want = it == expected.end() ? 0 : it->second;
                EXPECT_EQ(m.count(i, j), want);
                total += m.count(i, j);
            }
        }
        std::uint64_t expected_total = 0;
        for (const auto& [k, v] : expected) expected_total += v;
        EXPECT_EQ(total, expected_total);
    }
}

TEST(Network, SymmetricRingGivesEqualScores) {
    const auto ef = eigenfactor(ring(4));
    for (const auto& [id, s] : ef.scores) EXPECT_NEAR(s, 25.0, 1e-12) << id;
    const auto ais = article_influence(ef, ring(4));
    for (const auto& [id, s] : ais.scores) EXPECT_NEAR(s, 1.0, 1e-12);
    const auto sj = sjr(ring(5, 3));
    const double first = sj.scores.begin()->second;
    for (const auto& [id, s] : sj.scores) EXPECT_NEAR(s, first, 1e-12);
}

TEST(Network, EigenfactorSumsToHundredAndMatchesDenseOracle) {
    Rng rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
        const auto c = random_dense(rng, n, 30, 3);
        const auto articles = random_articles(rng, n);
        const auto m = JournalCitationMatrix::from_dense(ids(n), c, articles, 2016, 5);
        EigenfactorResult ef;
        try {
            ef = eigenfactor(m);
        } catch (const Error& e) {
            ASSERT_EQ(e.kind(), ErrorKind::NoCitations);
            continue;
        }
        double sum = 0;
        for (const auto& [id, s] : ef.scores) sum += s;
        EXPECT_NEAR(sum, 100.0, 1e-9);
        const auto expected = dense_eigenfactor(c, articles, 0.85);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ef.scores.at(ids(n)[i]), expected[i], 1e-6) << trial;
    }
}

TEST(Network, EigenfactorIsPermutationEquivariant) {
    Rng rng(9);
    const auto c = random_dense(rng, 7, 20, 4);
    const auto m = JournalCitationMatrix::from_dense(ids(7), c, random_articles(rng, 7), 2016, 5);
    const auto p = m.permuted({6, 2, 4, 0, 1, 5, 3});
    const auto a = eigenfactor(m);
    const auto b = eigenfactor(p);
    for (const auto& [id, s] : a.scores) EXPECT_NEAR(b.scores.at(id), s, 1e-9);
    const auto sa = sjr(JournalCitationMatrix::from_dense(ids(7), c, m.article_counts(), 2016, 3));
    const auto sb = sjr(JournalCitationMatrix::from_dense(ids(7), c, m.article_counts(), 2016, 3).permuted({3, 1, 0, 2, 6, 5, 4}));
    for (const auto& [id, s] : sa.scores) EXPECT_NEAR(sb.scores.at(id), s, 1e-9);
}

TEST(Network, SelfCitingOnlyJournalKeepsTeleportFloor) {
    // A cites only itself; B and C exchange citations. A's influence comes
    // from the article vector alone: pi_A = (1-d) s_A / (1 - d s_A).
    const auto m = JournalCitationMatrix::from_dense({"A", "B", "C"}, {{9, 0, 0}, {0, 0, 4}, {0, 6, 0}}, {20, 30, 50});
    const auto ef = eigenfactor(m);
    const double d = 0.85, s = 0.2;
    EXPECT_NEAR(ef.influence[0], (1 - d) * s / (1 - d * s), 1e-9);
    EXPECT_NEAR(ef.scores.at("A"), 0.0, 1e-12);
}

TEST(Network, NonConvergenceIsReported) {
    const auto m = JournalCitationMatrix::from_dense({"A", "B", "C"}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {10, 20, 70});
    RankingParams p;
    p.max_iterations = 1;
    try {
        (void)eigenfactor(m, p);
        FAIL() << "expected NonConvergence";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
    }
    EXPECT_NO_THROW((void)eigenfactor(m));
}

TEST(Network, EigenfactorWithoutCrossCitationsFails) {
    const auto m = JournalCitationMatrix::from_dense({"A", "B"}, {{5, 0}, {0, 2}}, {1, 1});
    EXPECT_THROW((void)eigenfactor(m), Error);
}

TEST(Network, ArticleInfluence) {
    const auto same = article_influence(ScoreMap{{"A", 20}, {"B", 20}, {"C", 20}}, {{"A", 5}, {"B", 5}, {"C", 5}});
    for (const auto& [id, s] : same.scores) EXPECT_DOUBLE_EQ(s, 1.0);

    const auto pair = article_influence(ScoreMap{{"A", 40}, {"B", 20}}, {{"A", 7}, {"B", 7}});
    EXPECT_DOUBLE_EQ(pair.scores.at("A") / pair.scores.at("B"), 2.0);

    const auto skipped = article_influence(ScoreMap{{"A", 40}, {"B", 20}, {"Z", 1}}, {{"A", 7}, {"B", 7}, {"Z", 0}});
    EXPECT_EQ(skipped.excluded, std::vector<std::string>{"Z"});

    Rng rng(5);
    const auto c = random_dense(rng, 5, 40, 5);
    const auto articles = random_articles(rng, 5);
    const auto m = JournalCitationMatrix::from_dense(ids(5), c, articles, 2016, 5);
    const auto ef = eigenfactor(m);
    const auto ais = article_influence(ef, m);
    const double art_total = std::accumulate(articles.begin(), articles.end(), 0.0);
    double weighted = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto id = ids(5)[i];
        const double expected = (ef.scores.at(id) / 100.0) / (static_cast<double>(articles[i]) / art_total);
        EXPECT_NEAR(ais.scores.at(id), expected, 1e-12);
        weighted += ais.scores.at(id) * static_cast<double>(articles[i]);
    }
    EXPECT_NEAR(weighted / art_total, 1.0, 1e-12);
}

TEST(Network, SjrMatchesDenseFixedPoint) {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 8);
        const auto c = random_dense(rng, n, 50, 3);
        const auto articles = random_articles(rng, n);
        const auto m = JournalCitationMatrix::from_dense(ids(n), c, articles, 2016, 3);
        SjrResult res;
        try {
            res = sjr(m);
        } catch (const Error&) {
            continue;
        }
        // Caps applied by hand from column totals.
        const auto nn = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd w(nn, nn);
        for (std::size_t j = 0; j < n; ++j) {
            double received = 0;
            for (std::size_t i = 0; i < n; ++i) received += static_cast<double>(c[i][j]);
            for (std::size_t i = 0; i < n; ++i) {
                const double cap = (i == j ? 0.33 : 0.10) * received;
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::min(static_cast<double>(c[i][j]), cap);
            }
        }
        const auto a = shares(articles);
        const auto pi = dense_stationary(w, a, 0.85);
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            EXPECT_NEAR(res.prestige[i], pi[k], 1e-6);
            EXPECT_NEAR(res.scores.at(ids(n)[i]), pi[k] / a[k], 1e-6 * (1 + pi[k] / a[k]));
        }
    }
}

TEST(Network, SjrCapsPenalizeCartelPair) {
    const std::size_t n = 8;
    Dense c(n, std::vector<std::uint64_t>(n, 10));
    for (std::size_t i = 0; i < n; ++i) c[i][i] = 5;
    // Journals 0 and 1 send 90% of their citations to each other.
    c[0] = std::vector<std::uint64_t>(n, 1);
    c[1] = std::vector<std::uint64_t>(n, 1);
    c[0][0] = c[1][1] = 0;
    c[0][1] = 60;
    c[1][0] = 60;
    const auto m = JournalCitationMatrix::from_dense(ids(n), c, std::vector<std::uint64_t>(n, 40), 2016, 3);
    RankingParams uncapped;
    uncapped.sjr_single_journal_cap = 1.0;
    uncapped.sjr_self_citation_cap = 1.0;
    const auto capped = sjr(m);
    const auto free = sjr(m, uncapped);
    EXPECT_LT(capped.prestige[0], free.prestige[0]);
    EXPECT_LT(capped.prestige[1], free.prestige[1]);
    const auto counts = sjr_capped_counts(m, RankingParams{});
    double received = 0;
    for (std::size_t i = 0; i < n; ++i) received += static_cast<double>(c[i][0]);
    EXPECT_DOUBLE_EQ(counts[1][0], 0.10 * received);
}

TEST(Network, SjrNeedsThreeYearWindow) {
    EXPECT_THROW((void)sjr(ring(4, 5)), Error);
}

TEST(Network, SnipEqualsRawImpactWhenPotentialIsOne) {
    MiniCorpus m;
    m.journal("A").journal("C");
    for (int i = 0; i < 4; ++i) m.paper("a" + std::to_string(i), "A", 2014 + i % 2);
    for (int i = 0; i < 6; ++i) {
        const std::string c = "c" + std::to_string(i);
        m.paper(c, "C", 2016).cite(c, "a" + std::to_string(i % 4));
    }
    const auto r = m.resolved();
    EXPECT_DOUBLE_EQ(snip(r, "A", 2016), 6.0 / 4.0);
}

TEST(Network, SnipNormalizesByCitingReferenceLength) {
    MiniCorpus m;
    m.journal("A").journal("B").journal("CA").journal("CB").journal("F");
    for (int i = 0; i < 40; ++i) m.paper("f" + std::to_string(i), "F", 2015);
    for (int i = 0; i < 10; ++i) {
        m.paper("a" + std::to_string(i), "A", 2015);
        m.paper("b" + std::to_string(i), "B", 2015);
    }
    for (int i = 0; i < 20; ++i) {
        const std::string ca = "ca" + std::to_string(i), cb = "cb" + std::to_string(i);
        m.paper(ca, "CA", 2016).cite(ca, "a" + std::to_string(i % 10));
        m.paper(cb, "CB", 2016).cite(cb, "b" + std::to_string(i % 10));
        for (int k = 0; k < 9; ++k) m.cite(ca, "f" + std::to_string(k));
        for (int k = 0; k < 39; ++k) m.cite(cb, "f" + std::to_string(k));
    }
    const auto r = m.resolved();
    EXPECT_DOUBLE_EQ(jif_wos_derived(tally(r, "A", 2016, 3)), jif_wos_derived(tally(r, "B", 2016, 3)));
    EXPECT_NEAR(snip(r, "A", 2016) / snip(r, "B", 2016), 4.0, 1e-12);
}

TEST(Network, SnipErrors) {
    const auto r = MiniCorpus().journal("A").journal("E").paper("a", "A", 2015).paper("x", "A", 2016).resolved();
    try {
        (void)snip(r, "A", 2016);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoCitingPapers);
    }
    EXPECT_THROW((void)snip(r, "E", 2016), Error);
}

TEST(Network, SnipInvariantUnderReplication) {
    const auto corpus = generate(oracle::random_scenario(12, 500));
    CorpusBuilder b;
    for (const auto& j : corpus.journals()) b.add_journal(j);
    for (const std::string tag : {"", "~2"}) {
        for (auto p : corpus.papers()) {
            p.paper_id += tag;
            b.add_paper(p);
        }
        for (auto x : corpus.references()) {
            x.citing_paper_id += tag;
            if (x.cited_paper_id) *x.cited_paper_id += tag;
            b.add_reference(x);
        }
    }
    const auto doubled = resolve(std::move(b).finalize());
    const auto original = resolve(corpus);
    const Year census = corpus.year_range().max_year;
    const auto a = snip_all(original, census);
    const auto d = snip_all(doubled, census);
    ASSERT_EQ(a.size(), d.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        ASSERT_EQ(a[j].has_value(), d[j].has_value());
        if (a[j]) {
            EXPECT_NEAR(*a[j], *d[j], 1e-12);
        }
    }
}

TEST(Network, RankingReportOnGeneratedCorpus) {
    ScenarioSpec spec;
    spec.seed = 3;
    JournalSpec js;
    js.count = 12;
    js.n_papers_per_year = 15;
    spec.journals.push_back(js);
    const auto r = resolve(generate(spec));
    const auto rows = ranking_report(r, 2016);
    ASSERT_EQ(rows.size(), 12u);
    double ef = 0;
    for (const auto& row : rows) {
        ASSERT_TRUE(row.eigenfactor && row.article_influence && row.sjr && row.snip);
        ef += *row.eigenfactor;
    }
    EXPECT_NEAR(ef, 100.0, 1e-9);
    std::ostringstream out;
    write_ranking_csv(rows, out);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "journal_id,eigenfactor,article_influence,sjr,snip");
}
