#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "properties.hpp"
#include "synthetic.hpp"
#include "tweetswing/errors.hpp"
#include "tweetswing/swing.hpp"

namespace tweetswing {
namespace {

double one_decimal(double v) { return std::round(v * 10.0) / 10.0; }

class PublishedSwing : public ::testing::Test {
protected:
    ShareVector twitter = read_shares_csv(synthetic::fixture_path("published_shares.csv"));
    NationalBaseline base = NationalBaseline::read_csv(synthetic::data_path("national_2010.csv"));
    NationalChanges changes = national_changes(twitter, base);
};

TEST_F(PublishedSwing, ChangesMatchPrintedColumn) {
    const std::map<std::string, double> printed = {
        {"CON", -6.8}, {"LAB", -0.7}, {"LD", -18.6}, {"SNP", 7.5}, {"GRN", 1.3}, {"UKIP", 20.7}, {"PC", -0.4},
    };
    for (const auto& [g, v] : printed) EXPECT_EQ(one_decimal(changes.at(g)), v) << g;
    EXPECT_EQ(changes.at("DUP"), 0.0);
    EXPECT_EQ(changes.at("SF"), 0.0);
}

TEST_F(PublishedSwing, HalesowenWorkedExample) {
    auto seats = read_constituencies_csv(synthetic::fixture_path("halesowen.csv"), {"CON", "LAB", "LD"});
    ASSERT_EQ(seats.size(), 1u);
    auto projected = project_constituency(seats[0], changes);
    ASSERT_EQ(projected.size(), 3u);
    EXPECT_EQ(one_decimal(projected[0].share), 34.4);
    EXPECT_EQ(one_decimal(projected[1].share), 35.9);
    EXPECT_EQ(projected[2].share, 0.0);  // 14.8 - 18.6 clamps

    auto winner = constituency_winner(projected, seats[0]);
    EXPECT_EQ(winner.group, "LAB");
    EXPECT_EQ(one_decimal(winner.margin), 1.5);

    // The 2010 result itself is a Conservative hold.
    EXPECT_EQ(constituency_winner(seats[0].shares, seats[0]).group, "CON");
}

TEST(NationalChanges, BaselineGroupsWithoutTwitterFigureCarryForward) {
    NationalBaseline base;
    base.share_pct = {{"A", 40.0}, {"OTH", 5.0}, {"NI", std::nullopt}};
    ShareVector twitter{{{"A", {}, {}, 1.0, 0.5}, {"B", {}, {}, 1.0, 0.5}}};
    auto ch = national_changes(twitter, base);
    EXPECT_EQ(ch.at("A"), 10.0);
    EXPECT_EQ(ch.at("B"), 0.0);
    EXPECT_EQ(ch.at("OTH"), 0.0);
    EXPECT_EQ(ch.at("NI"), 0.0);
}

TEST(ProjectConstituency, OnlyPartiesThatStood) {
    ConstituencyResult c{"X1", "X", {{"A", 50.0}, {"B", 30.0}}};
    auto p = project_constituency(c, {{"A", -5.0}, {"B", 2.0}, {"C", 40.0}});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0], (PartyShare{"A", 45.0}));
    EXPECT_EQ(p[1], (PartyShare{"B", 32.0}));
}

TEST(ConstituencyWinner, SoleParty) {
    ConstituencyResult c{"S", "Speaker's seat", {{"X", 50.0}}};
    auto w = constituency_winner(c.shares, c);
    EXPECT_EQ(w.group, "X");
    EXPECT_EQ(w.margin, 0.0);
}

TEST(ConstituencyWinner, TiesPreferHigher2010ShareThenGroupId) {
    ConstituencyResult c{"T", "Tie", {{"A", 31.0}, {"B", 29.0}}};
    std::vector<PartyShare> projected{{"A", 30.0}, {"B", 30.0}};
    EXPECT_EQ(constituency_winner(projected, c).group, "A");
    std::vector<PartyShare> flipped{{"B", 30.0}, {"A", 30.0}};
    EXPECT_EQ(constituency_winner(flipped, c).group, "A");

    ConstituencyResult even{"E", "Even", {{"Z", 30.0}, {"Y", 30.0}}};
    EXPECT_EQ(constituency_winner(even.shares, even).group, "Y");
}

std::vector<ConstituencyForecast> won_by(const std::map<std::string, std::size_t>& seats) {
    std::vector<ConstituencyForecast> out;
    for (const auto& [g, n] : seats) {
        for (std::size_t i = 0; i < n; ++i) out.push_back({g + std::to_string(i), "", {{g, 40.0}}, {g, 0.0}});
    }
    return out;
}

TEST(Tally, UnanimousMajority) {
    auto f = tally(won_by({{"X", 3}}));
    EXPECT_EQ(f.seats.at("X"), 3u);
    EXPECT_EQ(f.majority, "X");
    EXPECT_EQ(f.majority_threshold, 2u);
}

TEST(Tally, PublishedSeatsAreHung) {
    auto f = tally(won_by({{"LAB", 306}, {"CON", 285}, {"LD", 21}, {"SNP", 9}, {"UKIP", 5}, {"GRN", 1}, {"PC", 3}, {"OTH", 20}}));
    EXPECT_EQ(f.total_seats, 650u);
    EXPECT_EQ(f.majority_threshold, 326u);
    EXPECT_TRUE(f.hung());

    auto g = tally(won_by({{"LAB", 326}, {"CON", 324}}));
    EXPECT_EQ(g.majority, "LAB");
    auto h = tally(won_by({{"LAB", 325}, {"CON", 325}}));
    EXPECT_TRUE(h.hung());
}

TEST(ReadConstituencies, UnknownGroupNamesTheLine) {
    auto path = std::filesystem::temp_directory_path() / "tweetswing_bad_baseline.csv";
    {
        std::ofstream out(path);
        out << "constituency_id,name,group,share_pct\nA,Alpha,CON,40\nA,Alpha,MRLP,1.5\n";
    }
    try {
        read_constituencies_csv(path, {"CON", "LAB"});
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
        EXPECT_NE(msg.find("MRLP"), std::string::npos) << msg;
    }
    std::filesystem::remove(path);
}

TEST(ReadConstituencies, RejectsImpossibleShares) {
    auto path = std::filesystem::temp_directory_path() / "tweetswing_bad_shares.csv";
    {
        std::ofstream out(path);
        out << "constituency_id,name,group,share_pct\nA,Alpha,CON,60\nA,Alpha,LAB,41\n";
    }
    EXPECT_THROW(read_constituencies_csv(path, {"CON", "LAB"}), DataError);
    {
        std::ofstream out(path);
        out << "constituency_id,name,group,share_pct\nA,Alpha,CON,60.2\nA,Alpha,LAB,40.2\nB,Beta,LAB,-1\n";
    }
    EXPECT_THROW(read_constituencies_csv(path, {"CON", "LAB"}), DataError);
    {
        std::ofstream out(path);
        out << "constituency_id,name,group,share_pct\nA,Alpha,CON,60.2\nA,Alpha,LAB,40.2\n";
    }
    EXPECT_EQ(read_constituencies_csv(path, {"CON", "LAB"}).size(), 1u);  // 100.4 within rounding slack
    std::filesystem::remove(path);
}

TEST_F(PublishedSwing, NationalSummaryLayout) {
    auto seats = read_constituencies_csv(synthetic::fixture_path("halesowen.csv"), {"CON", "LAB", "LD"});
    auto fc = forecast_seats(seats, changes);
    std::ostringstream national, seats_csv, summary;
    write_national_csv(national, fc, twitter, base, changes);
    write_seats_csv(seats_csv, fc);
    write_summary(summary, fc);

    EXPECT_EQ(national.str().substr(0, national.str().find('\n')), "group,share_2010,twitter_share,change,seats");
    EXPECT_NE(national.str().find("\nDUP,,1.700,,0\n"), std::string::npos) << national.str();
    EXPECT_NE(national.str().find("\nLAB,29.000,28.300,-0.700,1\n"), std::string::npos) << national.str();
    EXPECT_EQ(seats_csv.str(),
              "constituency_id,name,winner,margin,CON,LAB,LD\n"
              "E14000733,Halesowen and Rowley Regis,LAB,1.500,34.400,35.900,0.000\n");
    EXPECT_NE(summary.str().find("verdict: majority LAB"), std::string::npos);
}

TEST(SwingProperties, IdentitySwing) { EXPECT_EQ(properties::identity_swing_reproduces_baseline(51), std::nullopt); }

TEST(SwingProperties, UniformShift) { EXPECT_EQ(properties::uniform_shift_keeps_winners(52, 50), std::nullopt); }

TEST(SwingProperties, ScaleInvariance) {
    EXPECT_EQ(properties::proportion_and_winner_scale_invariance(53, 50), std::nullopt);
}

TEST(SwingProperties, ParallelForecastMatchesSequential) {
    auto seats = synthetic::random_constituencies(54, 650, {"A", "B", "C", "D"});
    NationalChanges ch{{"A", -3.0}, {"B", 4.5}, {"C", 1.25}};
    auto one = forecast_seats(seats, ch, 1);
    auto four = forecast_seats(seats, ch, 4);
    EXPECT_EQ(one.seats, four.seats);
    std::ostringstream a, b;
    write_seats_csv(a, one);
    write_seats_csv(b, four);
    EXPECT_EQ(a.str(), b.str());
}

}  // namespace
}  // namespace tweetswing
