#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ddp/resolver.hpp"
#include "ddp/worldkb.hpp"

namespace ddp {

enum class Band {
  BelowP001,   // p < .001
  P001ToP01,   // .001 < p < .01
  P01ToP05,    // .01 < p < .05
  P05ToP10,    // .05 < p < .10
  P10ToP20,    // .10 < p < .20
  P20ToP50,    // .20 < p < .50
  P50ToP70,    // .50 < p < .70
  AboveP70,    // p > .70
};

enum class SignificanceClass { Significant, WeaklySignificant, Insignificant };

std::string to_string(Band b);
std::string to_string(SignificanceClass c);
SignificanceClass classify(Band b);

struct ChiSquareResult {
  double chi2 = 0.0;
  Band band = Band::AboveP70;
};

// Goodness-of-fit against an even split, with "unclear" answers divided
// evenly between the two explicit answers. df = 1.
ChiSquareResult chi_square(double a, double b, double unclear);

struct SurveyExample {
  std::string id;                        // "A" .. "L"
  std::string description;               // the discourse in English
  std::vector<std::string> utterances;   // ILF sources
  int target_utterance = 0;              // 1-based index of the probe
  int answer1 = 0, answer2 = 0, unclear = 0;
  double expected_chi2 = 0.0;
  Band expected_band = Band::BelowP001;
  std::string expected_outcome;          // "John", "John-Bill", "John/Arnold"
  Status expected_status = Status::Determinate;
  Winner expected_winner = Winner::None;
  bool expected_garden_path = false;
};

// The twelve examples with observed counts and expected behavior.
const std::vector<SurveyExample>& survey_corpus();

struct SurveyRecord {
  std::string id;
  std::string expected_outcome;
  std::string actual_outcome;
  Status status = Status::Determinate;
  Winner winner = Winner::None;
  bool garden_path = false;
  double chi2 = 0.0;
  Band band = Band::AboveP70;
  bool outcome_ok = false;
  bool winner_ok = false;
  bool chi2_ok = false;
  bool garden_path_ok = false;
  std::string error;
  bool pass() const {
    return error.empty() && outcome_ok && winner_ok && chi2_ok && garden_path_ok;
  }
};

struct SurveyReport {
  std::vector<SurveyRecord> records;
  int passed = 0;
  bool all_pass() const { return passed == static_cast<int>(records.size()); }
};

SurveyReport run_survey_suite(std::shared_ptr<const KnowledgeBase> kb);

std::string render_survey_text(const SurveyReport& report);
std::string render_survey_json(const SurveyReport& report);

// Outcome string for a verdict at the probe utterance: the top assignment
// ("John", "John-Bill") or the tie members ("John/Arnold").
std::string outcome_string(const PreferenceVerdict& verdict);

}  // namespace ddp
