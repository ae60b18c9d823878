#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "panoproj/pairwise.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace panoproj;
namespace pt = panoproj::testing;

namespace {

PreferenceRecord vote(const std::string& obs, const std::string& img, const std::string& a,
                      const std::string& b, Outcome o) {
  return {obs, img, a, b, o};
}

// Complete design of one observer over stimuli s0..s{n-1}; outcome[i][j] =
// +1 when i beats j, -1 when j beats i, 0 for a tie.
std::vector<PreferenceRecord> complete_design(const std::string& obs, const std::string& img,
                                              const std::vector<std::vector<int>>& outcome) {
  std::vector<PreferenceRecord> records;
  const int n = static_cast<int>(outcome.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::string a = "s" + std::to_string(i);
      const std::string b = "s" + std::to_string(j);
      Outcome o = Outcome::Tie;
      if (outcome[i][j] == 1) o = Outcome::A;
      if (outcome[i][j] == -1) o = Outcome::B;
      records.push_back(vote(obs, img, a, b, o));
    }
  }
  return records;
}

std::vector<std::vector<int>> random_tournament(int n, pt::Rng& rng, bool with_ties) {
  std::vector<std::vector<int>> outcome(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int v = rng.below(2) ? 1 : -1;
      if (with_ties && rng.below(4) == 0) v = 0;
      outcome[i][j] = v;
      outcome[j][i] = -v;
    }
  }
  return outcome;
}

}  // namespace

TEST_CASE("csv parsing accepts headers and tie synonyms") {
  std::istringstream in(
      "observer_id,image_id,stimulus_a,stimulus_b,outcome\n"
      "o1,img,a,b,A\n"
      "o1,img,a,c,B\n"
      "o1,img,b,c,a=b\n");
  const auto records = read_preference_csv(in, "votes");
  REQUIRE(records.size() == 3);
  CHECK(records[0].outcome == Outcome::A);
  CHECK(records[1].outcome == Outcome::B);
  CHECK(records[2].outcome == Outcome::Tie);
}

TEST_CASE("malformed rows are reported with line numbers") {
  std::istringstream bad_fields("o1,img,a,b\n");
  CHECK_THROWS_WITH_AS(read_preference_csv(bad_fields, "votes"),
                       doctest::Contains("votes:1"), std::runtime_error);

  std::istringstream bad_outcome("o1,img,a,b,A\no1,img,a,c,maybe\n");
  CHECK_THROWS_WITH_AS(read_preference_csv(bad_outcome, "votes"),
                       doctest::Contains("votes:2"), std::runtime_error);

  std::istringstream self_pair("o1,img,a,a,A\n");
  CHECK_THROWS_AS(read_preference_csv(self_pair, "votes"), std::runtime_error);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_preference_csv(empty, "votes"), std::runtime_error);
}

TEST_CASE("a consistent ranking has a perfect transitivity rate") {
  // s0 beats everyone, s1 beats s2, s3, and so on.
  std::vector<std::vector<int>> outcome(4, std::vector<int>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) outcome[i][j] = 1, outcome[j][i] = -1;
  const auto reports = transitivity_rates(complete_design("o1", "img", outcome));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].comparisons == 6);
  CHECK(reports[0].circular_triads == 0);
  CHECK(reports[0].rate == 1.0);
  CHECK_FALSE(reports[0].outlier);
}

TEST_CASE("a three-cycle is flagged as an outlier") {
  std::vector<std::vector<int>> outcome(3, std::vector<int>(3, 0));
  outcome[0][1] = 1;  // a > b
  outcome[1][2] = 1;  // b > c
  outcome[0][2] = -1; // c > a
  outcome[1][0] = -1;
  outcome[2][1] = -1;
  outcome[2][0] = 1;
  const auto reports = transitivity_rates(complete_design("o1", "img", outcome));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].comparisons == 3);
  CHECK(reports[0].circular_triads == 1);
  CHECK(reports[0].rate == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(reports[0].outlier);
}

TEST_CASE("triad counts match brute force on six-stimulus designs") {
  pt::Rng rng(314159);
  for (int trial = 0; trial < 40; ++trial) {
    const auto outcome = random_tournament(6, rng, trial % 2 == 1);
    const auto reports = transitivity_rates(complete_design("o", "img", outcome));
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].comparisons == 15);
    CHECK(reports[0].circular_triads == pt::brute_force_circular_triads(6, outcome));
  }
}

TEST_CASE("triads accumulate across images, comparisons across everything") {
  std::vector<std::vector<int>> cyclic(3, std::vector<int>(3, 0));
  cyclic[0][1] = cyclic[1][2] = cyclic[2][0] = 1;
  cyclic[1][0] = cyclic[2][1] = cyclic[0][2] = -1;
  auto records = complete_design("o1", "img1", cyclic);
  for (const auto& r : complete_design("o1", "img2", cyclic)) records.push_back(r);
  const auto reports = transitivity_rates(records);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].comparisons == 6);
  CHECK(reports[0].circular_triads == 2);
  CHECK(reports[0].rate == doctest::Approx(1.0 - 2.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("incomplete designs are reported with the missing pairs") {
  std::vector<PreferenceRecord> records{vote("o1", "img", "a", "b", Outcome::A),
                                        vote("o1", "img", "b", "c", Outcome::A)};
  CHECK_THROWS_WITH_AS(transitivity_rates(records), doctest::Contains("a/c"),
                       std::runtime_error);

  records.push_back(vote("o1", "img", "a", "c", Outcome::A));
  CHECK_NOTHROW(transitivity_rates(records));

  records.push_back(vote("o1", "img", "a", "c", Outcome::B));
  CHECK_THROWS_WITH_AS(transitivity_rates(records), doctest::Contains("duplicate"),
                       std::runtime_error);
}

TEST_CASE("unanimous preferences give probability one") {
  std::vector<PreferenceRecord> records;
  for (int o = 0; o < 26; ++o)
    records.push_back(vote("obs" + std::to_string(o), "img", "a", "b", Outcome::A));
  const auto matrices = build_preference_matrices(records);
  REQUIRE(matrices.size() == 1);
  CHECK(matrices[0].observers == 26.0);
  const auto probs = preference_probabilities(matrices[0]);
  CHECK(probs.at(0, 1) == 1.0);
  CHECK(probs.at(1, 0) == 0.0);
}

TEST_CASE("ties split evenly") {
  std::vector<PreferenceRecord> records;
  for (int o = 0; o < 10; ++o)
    records.push_back(vote("obs" + std::to_string(o), "img", "a", "b", Outcome::Tie));
  const auto matrices = build_preference_matrices(records);
  const auto probs = preference_probabilities(matrices[0]);
  CHECK(probs.at(0, 1) == 0.5);
  CHECK(probs.at(1, 0) == 0.5);
}

TEST_CASE("voted pairs sum to one, unvoted pairs are absent") {
  pt::Rng rng(99);
  std::vector<PreferenceRecord> records;
  for (int o = 0; o < 8; ++o) {
    const auto outcome = random_tournament(4, rng, true);
    for (const auto& r : complete_design("obs" + std::to_string(o), "img", outcome))
      records.push_back(r);
  }
  // A fifth stimulus pair that nobody voted on: add stimulus only via one pair.
  records.push_back(vote("obs0", "img", "s0", "s9", Outcome::A));

  const auto matrices = build_preference_matrices(records);
  const auto probs = preference_probabilities(matrices[0]);
  const int n = matrices[0].size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double votes = matrices[0].win(i, j) + matrices[0].win(j, i);
      if (probs.voted[static_cast<std::size_t>(i) * n + j]) {
        // P_AB + P_BA equals the voted fraction; one when every observer voted.
        CHECK(probs.at(i, j) + probs.at(j, i) ==
              doctest::Approx(votes / matrices[0].observers).epsilon(1e-12));
        if (votes == matrices[0].observers)
          CHECK(probs.at(i, j) + probs.at(j, i) == doctest::Approx(1.0).epsilon(1e-12));
      } else {
        CHECK(std::isnan(probs.at(i, j)));
      }
    }
  }
  // s9 was only compared with s0.
  const auto it = std::find(matrices[0].stimuli.begin(), matrices[0].stimuli.end(), "s9");
  REQUIRE(it != matrices[0].stimuli.end());
  const int s9 = static_cast<int>(it - matrices[0].stimuli.begin());
  int voted_with_s9 = 0;
  for (int j = 0; j < n; ++j)
    if (j != s9 && probs.voted[static_cast<std::size_t>(s9) * n + j]) ++voted_with_s9;
  CHECK(voted_with_s9 == 1);
}

TEST_CASE("outlier exclusion removes an observer's votes") {
  std::vector<std::vector<int>> cyclic(3, std::vector<int>(3, 0));
  cyclic[0][1] = cyclic[1][2] = cyclic[2][0] = 1;
  cyclic[1][0] = cyclic[2][1] = cyclic[0][2] = -1;
  std::vector<std::vector<int>> ranked(3, std::vector<int>(3, 0));
  ranked[0][1] = ranked[0][2] = ranked[1][2] = 1;
  ranked[1][0] = ranked[2][0] = ranked[2][1] = -1;

  auto records = complete_design("bad", "img", cyclic);
  for (const auto& r : complete_design("good", "img", ranked)) records.push_back(r);

  const auto reports = transitivity_rates(records);
  std::vector<std::string> excluded;
  for (const auto& r : reports)
    if (r.outlier) excluded.push_back(r.observer);
  REQUIRE(excluded == std::vector<std::string>{"bad"});

  const auto matrices = build_preference_matrices(records, excluded);
  CHECK(matrices[0].observers == 1.0);
  CHECK(matrices[0].win(0, 1) == 1.0);  // only the good observer counted
}

TEST_CASE("equal win shares give equal bradley-terry scores") {
  PreferenceMatrix m;
  m.image = "img";
  m.stimuli = {"a", "b"};
  m.wins = {0.0, 5.0, 5.0, 0.0};
  m.observers = 10.0;
  const BradleyTerryResult bt = bradley_terry_scores(m);
  CHECK(bt.score[0] == doctest::Approx(bt.score[1]).epsilon(1e-10));
  CHECK(bt.score[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bradley-terry recovers generating strengths from expected counts") {
  const double strengths[3] = {1.0, 2.0, 4.0};
  PreferenceMatrix m;
  m.image = "img";
  m.stimuli = {"a", "b", "c"};
  m.observers = 60.0;
  m.wins.assign(9, 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      m.wins[static_cast<std::size_t>(i) * 3 + j] =
          60.0 * strengths[i] / (strengths[i] + strengths[j]);
    }
  }
  const BradleyTerryResult bt = bradley_terry_scores(m);
  CHECK(bt.score[1] / bt.score[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(bt.score[2] / bt.score[0] == doctest::Approx(4.0).epsilon(1e-6));
  // Zero geometric mean in the log domain.
  CHECK(std::log(bt.score[0]) + std::log(bt.score[1]) + std::log(bt.score[2]) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("a dominance chain yields strictly ordered scores") {
  std::vector<std::vector<int>> ranked(3, std::vector<int>(3, 0));
  ranked[0][1] = ranked[0][2] = ranked[1][2] = 1;
  ranked[1][0] = ranked[2][0] = ranked[2][1] = -1;
  std::vector<PreferenceRecord> records;
  for (int o = 0; o < 5; ++o) {
    for (const auto& r : complete_design("obs" + std::to_string(o), "img", ranked))
      records.push_back(r);
    // one dissenting tie so no stimulus has zero wins
    records.push_back(vote("obs" + std::to_string(o), "img2", "s0", "s2", Outcome::Tie));
  }
  const auto matrices = build_preference_matrices(records);
  const BradleyTerryResult bt = bradley_terry_scores(matrices[0]);
  CHECK(bt.score[0] > bt.score[1]);
  CHECK(bt.score[1] > bt.score[2]);
}

TEST_CASE("zero-win stimuli are flagged and pinned at zero") {
  PreferenceMatrix m;
  m.image = "img";
  m.stimuli = {"a", "b", "c"};
  m.observers = 4.0;
  m.wins = {0.0, 4.0, 4.0,
            0.0, 0.0, 4.0,
            0.0, 0.0, 0.0};
  const BradleyTerryResult bt = bradley_terry_scores(m);
  CHECK(bt.zero_wins[2] == 1);
  CHECK(bt.score[2] == 0.0);
  CHECK(bt.score[0] > bt.score[1]);
}

TEST_CASE("group means average probabilities over images") {
  std::vector<PreferenceRecord> records;
  // Image 1: 4 of 4 observers prefer a; image 2: 2 of 4 prefer a.
  for (int o = 0; o < 4; ++o) {
    records.push_back(vote("obs" + std::to_string(o), "img1", "a", "b", Outcome::A));
    records.push_back(vote("obs" + std::to_string(o), "img2", "a", "b",
                           o < 2 ? Outcome::A : Outcome::B));
  }
  const auto matrices = build_preference_matrices(records);
  REQUIRE(matrices.size() == 2);
  const PreferenceProbabilities mean = mean_probabilities(matrices);
  CHECK(mean.at(0, 1) == doctest::Approx((1.0 + 0.5) / 2.0).epsilon(1e-12));
  CHECK(mean.at(1, 0) == doctest::Approx((0.0 + 0.5) / 2.0).epsilon(1e-12));

  PreferenceMatrix other;
  other.image = "odd";
  other.stimuli = {"x", "y"};
  other.wins = {0.0, 1.0, 0.0, 0.0};
  other.observers = 1.0;
  CHECK_THROWS_AS(mean_probabilities({matrices[0], other}), std::runtime_error);
}

TEST_CASE("a disconnected comparison graph is rejected with its components") {
  PreferenceMatrix m;
  m.image = "img";
  m.stimuli = {"a", "b", "c", "d"};
  m.observers = 2.0;
  m.wins.assign(16, 0.0);
  m.wins[0 * 4 + 1] = 2.0;  // a-b compared
  m.wins[2 * 4 + 3] = 1.0;  // c-d compared
  m.wins[3 * 4 + 2] = 1.0;
  CHECK_THROWS_WITH_AS(bradley_terry_scores(m), doctest::Contains("disconnected"),
                       std::runtime_error);
}
