#include "panoproj/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace panoproj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

[[noreturn]] void row_error(const std::string& name, long line, const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<PreferenceRecord> read_preference_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_preference_csv(in, path);
}

std::vector<PreferenceRecord> read_preference_csv(std::istream& in, const std::string& name) {
  std::vector<PreferenceRecord> records;
  std::string line;
  long line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    std::vector<std::string> fields = split_csv_line(stripped);
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == "observer_id") continue;  // header
    }
    if (fields.size() != 5)
      row_error(name, line_no, "expected 5 fields, got " + std::to_string(fields.size()));

    PreferenceRecord rec;
    rec.observer = fields[0];
    rec.image = fields[1];
    rec.a = fields[2];
    rec.b = fields[3];
    if (rec.observer.empty() || rec.image.empty() || rec.a.empty() || rec.b.empty())
      row_error(name, line_no, "empty identifier");
    if (rec.a == rec.b) row_error(name, line_no, "stimulus compared against itself");

    std::string outcome = fields[4];
    std::transform(outcome.begin(), outcome.end(), outcome.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (outcome == "a")
      rec.outcome = Outcome::A;
    else if (outcome == "b")
      rec.outcome = Outcome::B;
    else if (outcome == "tie" || outcome == "a=b")
      rec.outcome = Outcome::Tie;
    else
      row_error(name, line_no, "outcome must be A, B or tie (got '" + fields[4] + "')");
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw std::runtime_error(name + ": no preference records");
  return records;
}

namespace {

using PairKey = std::pair<std::string, std::string>;

PairKey make_pair_key(const std::string& a, const std::string& b) {
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

// Strict tournament of one observer on one image: +1 if row beats column.
struct Tournament {
  std::vector<std::string> stimuli;
  std::map<PairKey, int> outcome;  // +1: first id wins, -1: second id wins, 0: tie

  bool beats(const std::string& x, const std::string& y) const {
    const auto it = outcome.find(make_pair_key(x, y));
    if (it == outcome.end() || it->second == 0) return false;
    return (x < y) == (it->second > 0);
  }
};

}  // namespace

std::vector<TransitivityReport> transitivity_rates(const std::vector<PreferenceRecord>& records) {
  // observer -> image -> tournament
  std::map<std::string, std::map<std::string, Tournament>> tables;
  std::map<std::string, long> comparisons;
  for (const PreferenceRecord& rec : records) {
    Tournament& t = tables[rec.observer][rec.image];
    const PairKey key = make_pair_key(rec.a, rec.b);
    if (t.outcome.count(key))
      throw std::runtime_error("observer " + rec.observer + ", image " + rec.image +
                               ": duplicate vote on pair " + key.first + "/" + key.second);
    int val = 0;
    if (rec.outcome != Outcome::Tie) {
      const std::string& winner = rec.outcome == Outcome::A ? rec.a : rec.b;
      val = winner == key.first ? 1 : -1;
    }
    t.outcome[key] = val;
    ++comparisons[rec.observer];
  }

  std::vector<TransitivityReport> reports;
  for (auto& [observer, images] : tables) {
    TransitivityReport report;
    report.observer = observer;
    report.comparisons = comparisons[observer];

    for (auto& [image, t] : images) {
      std::set<std::string> ids;
      for (const auto& [key, val] : t.outcome) {
        ids.insert(key.first);
        ids.insert(key.second);
      }
      t.stimuli.assign(ids.begin(), ids.end());

      // Triad counting needs every pair voted.
      std::string missing;
      for (std::size_t i = 0; i < t.stimuli.size(); ++i)
        for (std::size_t j = i + 1; j < t.stimuli.size(); ++j)
          if (!t.outcome.count(make_pair_key(t.stimuli[i], t.stimuli[j])))
            missing += (missing.empty() ? "" : ", ") + t.stimuli[i] + "/" + t.stimuli[j];
      if (!missing.empty())
        throw std::runtime_error("observer " + observer + ", image " + image +
                                 ": incomplete design, missing pairs: " + missing);

      const int n = static_cast<int>(t.stimuli.size());
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          for (int k = j + 1; k < n; ++k) {
            const std::string& a = t.stimuli[i];
            const std::string& b = t.stimuli[j];
            const std::string& c = t.stimuli[k];
            const bool cycle = (t.beats(a, b) && t.beats(b, c) && t.beats(c, a)) ||
                               (t.beats(b, a) && t.beats(c, b) && t.beats(a, c));
            if (cycle) ++report.circular_triads;
          }
        }
      }
    }

    report.rate = 1.0 - static_cast<double>(report.circular_triads) / report.comparisons;
    report.outlier = report.rate < 0.9;
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<PreferenceMatrix> build_preference_matrices(
    const std::vector<PreferenceRecord>& records,
    const std::vector<std::string>& excluded_observers) {
  const std::set<std::string> excluded(excluded_observers.begin(), excluded_observers.end());

  std::map<std::string, std::vector<const PreferenceRecord*>> by_image;
  for (const PreferenceRecord& rec : records) {
    if (excluded.count(rec.observer)) continue;
    by_image[rec.image].push_back(&rec);
  }

  std::vector<PreferenceMatrix> matrices;
  for (const auto& [image, recs] : by_image) {
    PreferenceMatrix m;
    m.image = image;

    std::set<std::string> ids;
    std::set<std::string> observers;
    for (const PreferenceRecord* r : recs) {
      ids.insert(r->a);
      ids.insert(r->b);
      observers.insert(r->observer);
    }
    m.stimuli.assign(ids.begin(), ids.end());
    m.observers = static_cast<double>(observers.size());

    const int n = m.size();
    m.wins.assign(static_cast<std::size_t>(n) * n, 0.0);
    auto index = [&m](const std::string& id) {
      return static_cast<int>(std::lower_bound(m.stimuli.begin(), m.stimuli.end(), id) -
                              m.stimuli.begin());
    };
    for (const PreferenceRecord* r : recs) {
      const int ia = index(r->a);
      const int ib = index(r->b);
      double wa = 0.5, wb = 0.5;
      if (r->outcome == Outcome::A) {
        wa = 1.0;
        wb = 0.0;
      } else if (r->outcome == Outcome::B) {
        wa = 0.0;
        wb = 1.0;
      }
      m.wins[static_cast<std::size_t>(ia) * n + ib] += wa;
      m.wins[static_cast<std::size_t>(ib) * n + ia] += wb;
    }
    matrices.push_back(std::move(m));
  }
  return matrices;
}

PreferenceProbabilities preference_probabilities(const PreferenceMatrix& matrix) {
  if (!(matrix.observers > 0.0))
    throw std::runtime_error("preference_probabilities: observer count must be positive");

  const int n = matrix.size();
  PreferenceProbabilities probs;
  probs.stimuli = matrix.stimuli;
  probs.p.assign(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
  probs.voted.assign(static_cast<std::size_t>(n) * n, 0);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (matrix.win(i, j) + matrix.win(j, i) <= 0.0) continue;  // absent, not zero
      probs.p[static_cast<std::size_t>(i) * n + j] = matrix.win(i, j) / matrix.observers;
      probs.voted[static_cast<std::size_t>(i) * n + j] = 1;
    }
  }
  return probs;
}

PreferenceProbabilities mean_probabilities(const std::vector<PreferenceMatrix>& matrices) {
  if (matrices.empty()) throw std::runtime_error("mean_probabilities: no matrices");
  for (const PreferenceMatrix& m : matrices)
    if (m.stimuli != matrices.front().stimuli)
      throw std::runtime_error("mean_probabilities: stimulus sets differ");

  const int n = matrices.front().size();
  std::vector<PreferenceProbabilities> per_image;
  per_image.reserve(matrices.size());
  for (const PreferenceMatrix& m : matrices) per_image.push_back(preference_probabilities(m));

  PreferenceProbabilities mean;
  mean.stimuli = matrices.front().stimuli;
  mean.p.assign(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
  mean.voted.assign(static_cast<std::size_t>(n) * n, 0);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double sum = 0.0;
      int images = 0;
      for (const PreferenceProbabilities& p : per_image) {
        if (!p.voted[static_cast<std::size_t>(i) * n + j]) continue;
        sum += p.at(i, j);
        ++images;
      }
      if (images > 0) {
        mean.p[static_cast<std::size_t>(i) * n + j] = sum / images;
        mean.voted[static_cast<std::size_t>(i) * n + j] = 1;
      }
    }
  }
  return mean;
}

BradleyTerryResult bradley_terry_scores(const PreferenceMatrix& matrix) {
  const int n = matrix.size();
  if (n < 2) throw std::runtime_error("bradley_terry_scores: need at least two stimuli");

  // The comparison graph must be connected.
  std::vector<int> component(n, -1);
  int components = 0;
  for (int s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<int> stack{s};
    component[s] = components;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (component[j] < 0 && matrix.win(i, j) + matrix.win(j, i) > 0.0) {
          component[j] = components;
          stack.push_back(j);
        }
      }
    }
    ++components;
  }
  if (components > 1) {
    std::string desc;
    for (int c = 0; c < components; ++c) {
      desc += c ? " | " : "";
      for (int i = 0; i < n; ++i)
        if (component[i] == c) desc += matrix.stimuli[i] + " ";
    }
    throw std::runtime_error("bradley_terry_scores: disconnected comparison graph: " + desc);
  }

  BradleyTerryResult result;
  result.stimuli = matrix.stimuli;
  result.score.assign(n, 1.0);
  result.zero_wins.assign(n, 0);

  std::vector<double> total_wins(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) total_wins[i] += matrix.win(i, j);
  for (int i = 0; i < n; ++i)
    if (total_wins[i] <= 0.0) result.zero_wins[i] = 1;

  std::vector<double> next(n);
  const int max_iterations = 10000;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    double max_rel = 0.0;
    for (int i = 0; i < n; ++i) {
      if (result.zero_wins[i]) {
        next[i] = 0.0;
        continue;
      }
      double denom = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double games = matrix.win(i, j) + matrix.win(j, i);
        if (games > 0.0) denom += games / (result.score[i] + result.score[j]);
      }
      next[i] = total_wins[i] / denom;
      max_rel = std::max(max_rel, std::abs(next[i] - result.score[i]) /
                                      std::max(result.score[i], 1e-300));
    }

    // Fix the gauge: geometric mean of positive strengths is 1.
    double log_sum = 0.0;
    int positive = 0;
    for (int i = 0; i < n; ++i) {
      if (result.zero_wins[i]) continue;
      log_sum += std::log(next[i]);
      ++positive;
    }
    const double scale = positive > 0 ? std::exp(-log_sum / positive) : 1.0;
    for (int i = 0; i < n; ++i) result.score[i] = next[i] * scale;

    result.iterations = iter;
    if (max_rel < 1e-8) break;
  }
  return result;
}

void write_transitivity_csv(const std::string& path,
                            const std::vector<TransitivityReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "observer_id,comparisons,circular_triads,transitivity,outlier\n";
  for (const TransitivityReport& r : reports) {
    out << r.observer << ',' << r.comparisons << ',' << r.circular_triads << ',' << r.rate
        << ',' << (r.outlier ? 1 : 0) << '\n';
  }
}

void write_probability_csv(const std::string& path, const PreferenceMatrix& matrix,
                           const PreferenceProbabilities& probs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const int n = matrix.size();
  out << "stimulus";
  for (const std::string& id : matrix.stimuli) out << ',' << id;
  out << '\n';
  for (int i = 0; i < n; ++i) {
    out << matrix.stimuli[i];
    for (int j = 0; j < n; ++j) {
      out << ',';
      if (i == j)
        out << "-";
      else if (!probs.voted[static_cast<std::size_t>(i) * n + j])
        out << "NA";
      else
        out << probs.at(i, j);
    }
    out << '\n';
  }
}

void write_bt_csv(const std::string& path, const std::string& image,
                  const BradleyTerryResult& bt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "image_id,stimulus,score,zero_wins\n";
  for (std::size_t i = 0; i < bt.stimuli.size(); ++i) {
    out << image << ',' << bt.stimuli[i] << ',' << bt.score[i] << ','
        << (bt.zero_wins[i] ? 1 : 0) << '\n';
  }
}

}  // namespace panoproj
