#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <cstdint>

namespace panoproj {

enum class Outcome { A, B, Tie };

/// One observer's vote on a stimulus pair within one image.
struct PreferenceRecord {
  std::string observer;
  std::string image;
  std::string a;
  std::string b;
  Outcome outcome = Outcome::Tie;
};

/// Reads "observer_id,image_id,stimulus_a,stimulus_b,outcome" rows;
/// outcome is A, B or tie. Malformed rows are reported with line numbers.
std::vector<PreferenceRecord> read_preference_csv(const std::string& path);
std::vector<PreferenceRecord> read_preference_csv(std::istream& in, const std::string& name);

struct TransitivityReport {
  std::string observer;
  long comparisons = 0;      // h_o
  long circular_triads = 0;  // d_o
  double rate = 1.0;         // R_o = 1 - d_o / h_o
  bool outlier = false;      // R_o < 0.9
};

/// Per-observer transitivity satisfaction rates. Requires a complete
/// design: every stimulus pair of every image an observer took part in
/// must have exactly one vote; triads containing a tie are never circular.
std::vector<TransitivityReport> transitivity_rates(const std::vector<PreferenceRecord>& records);

/// Win counts for one image; ties contribute 0.5 to each side.
struct PreferenceMatrix {
  std::string image;
  std::vector<std::string> stimuli;
  std::vector<double> wins;  // n x n, row beats column
  double observers = 0.0;    // O

  double win(int i, int j) const { return wins[static_cast<std::size_t>(i) * stimuli.size() + j]; }
  int size() const { return static_cast<int>(stimuli.size()); }
};

/// One matrix per image, in image id order, excluding the given observers.
std::vector<PreferenceMatrix> build_preference_matrices(
    const std::vector<PreferenceRecord>& records,
    const std::vector<std::string>& excluded_observers = {});

struct PreferenceProbabilities {
  std::vector<std::string> stimuli;
  std::vector<double> p;        // n x n; NaN where no votes exist
  std::vector<std::uint8_t> voted;  // n x n pair-vote indicator

  double at(int i, int j) const { return p[static_cast<std::size_t>(i) * stimuli.size() + j]; }
};

/// P_AB = w_AB / O. Pairs without votes are absent (NaN), not zero.
PreferenceProbabilities preference_probabilities(const PreferenceMatrix& matrix);

/// Per-pair mean of per-image probabilities over images sharing one
/// stimulus set; pairs enter the mean only where voted.
PreferenceProbabilities mean_probabilities(const std::vector<PreferenceMatrix>& matrices);

struct BradleyTerryResult {
  std::vector<std::string> stimuli;
  std::vector<double> score;           // geometric mean of positive scores is 1
  std::vector<std::uint8_t> zero_wins; // strength pinned at 0
  int iterations = 0;
};

/// Maximum-likelihood Bradley-Terry strengths via minorization-maximization,
/// iterated until the largest relative change drops below 1e-8 (at most
/// 10000 iterations). Requires a connected comparison graph.
BradleyTerryResult bradley_terry_scores(const PreferenceMatrix& matrix);

void write_transitivity_csv(const std::string& path, const std::vector<TransitivityReport>& reports);
void write_probability_csv(const std::string& path, const PreferenceMatrix& matrix,
                           const PreferenceProbabilities& probs);
void write_bt_csv(const std::string& path, const std::string& image, const BradleyTerryResult& bt);

}  // namespace panoproj
