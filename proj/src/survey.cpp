#include "ddp/survey.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "ddp/context.hpp"
#include "ddp/ilf.hpp"

#ifndef DDP_CORPUS_DIR
#define DDP_CORPUS_DIR "corpus"
#endif

namespace ddp {

std::string to_string(Band b) {
  switch (b) {
    case Band::BelowP001: return "p<.001";
    case Band::P001ToP01: return ".001<p<.01";
    case Band::P01ToP05: return ".01<p<.05";
    case Band::P05ToP10: return ".05<p<.10";
    case Band::P10ToP20: return ".10<p<.20";
    case Band::P20ToP50: return ".20<p<.50";
    case Band::P50ToP70: return ".50<p<.70";
    case Band::AboveP70: return "p>.70";
  }
  return "p>.70";
}

std::string to_string(SignificanceClass c) {
  switch (c) {
    case SignificanceClass::Significant: return "significant";
    case SignificanceClass::WeaklySignificant: return "weakly-significant";
    case SignificanceClass::Insignificant: return "insignificant";
  }
  return "insignificant";
}

SignificanceClass classify(Band b) {
  switch (b) {
    case Band::BelowP001:
    case Band::P001ToP01:
    case Band::P01ToP05:
      return SignificanceClass::Significant;
    case Band::P05ToP10:
      return SignificanceClass::WeaklySignificant;
    default:
      return SignificanceClass::Insignificant;
  }
}

ChiSquareResult chi_square(double a, double b, double unclear) {
  const double total = a + b + unclear;
  if (total <= 0.0) throw Error("chi-square: zero total");
  const double ap = a + unclear / 2.0;
  const double bp = b + unclear / 2.0;
  const double expected = (ap + bp) / 2.0;
  const double chi2 = (ap - expected) * (ap - expected) / expected +
                      (bp - expected) * (bp - expected) / expected;

  // df=1 critical values, checked against an independent chi-square CDF.
  Band band = Band::AboveP70;
  if (chi2 >= 10.828) band = Band::BelowP001;
  else if (chi2 >= 6.635) band = Band::P001ToP01;
  else if (chi2 >= 3.841) band = Band::P01ToP05;
  else if (chi2 >= 2.706) band = Band::P05ToP10;
  else if (chi2 >= 1.642) band = Band::P10ToP20;
  else if (chi2 >= 0.455) band = Band::P20ToP50;
  else if (chi2 >= 0.148) band = Band::P50ToP70;
  return {chi2, band};
}

namespace {

struct ExpectRow {
  const char* id;
  const char* description;
  int answer1, answer2, unclear;
  double chi2;
  Band band;
  const char* outcome;
  Status status;
  Winner winner;
  bool garden_path;
};

const ExpectRow kRows[] = {
    {"A", "John hit Bill. Mary told him to go home.", 42, 0, 5, 37.53,
     Band::BelowP001, "John", Status::Determinate, Winner::Att, false},
    {"B", "Bill was hit by John. Mary told him to go home.", 7, 33, 7, 14.38,
     Band::BelowP001, "Bill", Status::Determinate, Winner::Att, false},
    {"C", "John hit Bill. Mary hit him too.", 0, 47, 0, 47.00, Band::BelowP001,
     "Bill", Status::Determinate, Winner::Sem, false},
    {"D", "John hit Bill. He doesn't like him.", 42, 0, 5, 37.53,
     Band::BelowP001, "John-Bill", Status::Determinate, Winner::Lf, false},
    {"E", "John hit Bill. He hit him back.", 2, 45, 0, 39.34, Band::BelowP001,
     "Bill-John", Status::Determinate, Winner::Sem, false},
    {"F", "John hit Bill. He was severely injured.", 0, 46, 1, 45.02,
     Band::BelowP001, "Bill", Status::Determinate, Winner::Wk, false},
    {"G", "John hit Arnold Schwarzenegger. He was severely injured.", 24, 13,
     10, 2.57, Band::P10ToP20, "John/Arnold", Status::Ambiguous, Winner::Wk,
     false},
    {"H", "John hit the Terminator. He was severely injured.", 34, 6, 7, 16.68,
     Band::BelowP001, "John", Status::Determinate, Winner::Wk, false},
    {"I",
     "Tommy came into the classroom. He saw Billy at the door. He hit him on "
     "the chin. He was severely injured.",
     3, 17, 1, 9.33, Band::P001ToP01, "Billy", Status::Determinate, Winner::Wk,
     true},
    {"J",
     "Tommy came into the classroom. He saw a group of boys at the door. He "
     "hit one of them on the chin. He was severely injured.",
     10, 7, 3, 0.45, Band::P50ToP70, "Tommy/Boy", Status::InfelicitousTie,
     Winner::None, false},
    {"K", "Babar went to a bakery. He greeted the baker. He pointed at a "
          "blueberry pie.",
     13, 0, 0, 13.00, Band::BelowP001, "Babar", Status::Determinate,
     Winner::AttLf, false},
    {"L", "Babar went to a bakery. The baker greeted him. He pointed at a "
          "blueberry pie.",
     3, 10, 0, 3.77, Band::P05ToP10, "Baker", Status::Determinate,
     Winner::AttLf, false},
};

std::string corpus_dir() {
  if (const char* env = std::getenv("DDP_CORPUS")) return env;
  return DDP_CORPUS_DIR;
}

std::vector<std::string> read_utterance_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus fixture: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == ';') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

const std::vector<SurveyExample>& survey_corpus() {
  static const std::vector<SurveyExample> corpus = [] {
    std::vector<SurveyExample> out;
    for (const ExpectRow& row : kRows) {
      SurveyExample ex;
      ex.id = row.id;
      ex.description = row.description;
      ex.utterances =
          read_utterance_lines(corpus_dir() + "/" + row.id + ".ilf");
      ex.target_utterance = static_cast<int>(ex.utterances.size());
      ex.answer1 = row.answer1;
      ex.answer2 = row.answer2;
      ex.unclear = row.unclear;
      ex.expected_chi2 = row.chi2;
      ex.expected_band = row.band;
      ex.expected_outcome = row.outcome;
      ex.expected_status = row.status;
      ex.expected_winner = row.winner;
      ex.expected_garden_path = row.garden_path;
      out.push_back(std::move(ex));
    }
    return out;
  }();
  return corpus;
}

std::string outcome_string(const PreferenceVerdict& verdict) {
  if (verdict.status == Status::Determinate)
    return render_assignment(verdict.top_assignment(), verdict.pronoun_order);
  if (verdict.pronoun_order.size() == 1) {
    std::string out;
    for (const EntityId& id : verdict.top_entities()) {
      if (!out.empty()) out += '/';
      out += display_name(id);
    }
    return out;
  }
  std::string out;
  for (size_t idx : verdict.groups[0]) {
    if (!out.empty()) out += '/';
    out += render_assignment(verdict.assignments[idx], verdict.pronoun_order);
  }
  return out;
}

SurveyReport run_survey_suite(std::shared_ptr<const KnowledgeBase> kb) {
  SurveyReport report;
  for (const SurveyExample& ex : survey_corpus()) {
    SurveyRecord rec;
    rec.id = ex.id;
    rec.expected_outcome = ex.expected_outcome;
    try {
      ChiSquareResult chi =
          chi_square(ex.answer1, ex.answer2, ex.unclear);
      rec.chi2 = chi.chi2;
      rec.band = chi.band;
      rec.chi2_ok = std::abs(chi.chi2 - ex.expected_chi2) <= 0.01 &&
                    chi.band == ex.expected_band;

      std::vector<Ilf> utterances;
      for (const std::string& src : ex.utterances)
        utterances.push_back(parse_ilf(src));
      Context ctx = init_context(kb);
      std::vector<ResolveResult> results = resolve_discourse(ctx, utterances);
      const PreferenceVerdict& verdict =
          results[ex.target_utterance - 1].verdict;
      rec.actual_outcome = outcome_string(verdict);
      rec.status = verdict.status;
      rec.winner = verdict.winner;
      rec.garden_path = verdict.garden_path;
      rec.outcome_ok = rec.actual_outcome == ex.expected_outcome &&
                       verdict.status == ex.expected_status;
      rec.winner_ok = verdict.winner == ex.expected_winner;
      rec.garden_path_ok = verdict.garden_path == ex.expected_garden_path;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    if (rec.pass()) ++report.passed;
    report.records.push_back(std::move(rec));
  }
  return report;
}

std::string render_survey_text(const SurveyReport& report) {
  auto fixed2 = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
  };
  std::ostringstream out;
  out << std::left << std::setw(4) << "id" << std::setw(14) << "expected"
      << std::setw(14) << "actual" << std::setw(8) << "winner" << std::setw(18)
      << "status" << std::setw(8) << "chi2" << std::setw(12) << "band"
      << "result\n";
  for (const SurveyRecord& rec : report.records) {
    out << std::left << std::setw(4) << rec.id << std::setw(14)
        << rec.expected_outcome << std::setw(14) << rec.actual_outcome
        << std::setw(8) << to_string(rec.winner) << std::setw(18)
        << (to_string(rec.status) +
            (rec.garden_path ? std::string("+gp") : std::string()))
        << std::setw(8) << fixed2(rec.chi2) << std::setw(12)
        << to_string(rec.band) << (rec.pass() ? "PASS" : "FAIL");
    if (!rec.error.empty()) out << "  [" << rec.error << "]";
    out << '\n';
  }
  out << "survey: " << report.passed << "/" << report.records.size()
      << (report.all_pass() ? " PASS" : " FAIL") << '\n';
  return out.str();
}

std::string render_survey_json(const SurveyReport& report) {
  nlohmann::json j;
  j["examples"] = nlohmann::json::array();
  for (const SurveyRecord& rec : report.records) {
    nlohmann::json r{{"id", rec.id},
                     {"expected", rec.expected_outcome},
                     {"actual", rec.actual_outcome},
                     {"winner", to_string(rec.winner)},
                     {"status", to_string(rec.status)},
                     {"garden_path", rec.garden_path},
                     {"chi2", rec.chi2},
                     {"band", to_string(rec.band)},
                     {"pass", rec.pass()}};
    if (!rec.error.empty()) r["error"] = rec.error;
    j["examples"].push_back(r);
  }
  j["passed"] = report.passed;
  j["total"] = report.records.size();
  return j.dump(2);
}

}  // namespace ddp
