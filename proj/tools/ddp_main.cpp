#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddp/context.hpp"
#include "ddp/ilf.hpp"
#include "ddp/resolver.hpp"
#include "ddp/survey.hpp"
#include "ddp/worldkb.hpp"

#ifndef DDP_DEFAULT_KB
#define DDP_DEFAULT_KB "kb/core.kb"
#endif

namespace {

std::string default_kb_path() {
  if (const char* env = std::getenv("DDP_KB")) return env;
  return DDP_DEFAULT_KB;
}

std::shared_ptr<const ddp::KnowledgeBase> load_kb(const std::string& path) {
  return std::make_shared<const ddp::KnowledgeBase>(
      ddp::KnowledgeBase::load_file(path));
}

std::string verdict_line(int index, const ddp::PreferenceVerdict& v) {
  std::ostringstream out;
  out << "utt" << index << ": ";
  if (v.pronoun_order.empty()) {
    out << "no pronouns";
  } else {
    bool first = true;
    for (const std::string& var : v.pronoun_order) {
      if (!first) out << ", ";
      first = false;
      out << var << " = ";
      if (v.status == ddp::Status::Determinate) {
        out << ddp::display_name(v.top_assignment().at(var));
      } else {
        // tied referents for this pronoun across the top group
        std::vector<std::string> names;
        for (size_t idx : v.groups[0]) {
          std::string name = ddp::display_name(v.assignments[idx].at(var));
          if (std::find(names.begin(), names.end(), name) == names.end())
            names.push_back(name);
        }
        for (size_t i = 0; i < names.size(); ++i)
          out << (i ? "/" : "") << names[i];
      }
    }
    out << " (" << ddp::to_string(v.status)
        << "; winner: " << ddp::to_string(v.winner);
    if (v.garden_path) out << "; garden-path";
    out << ")";
  }
  return out.str();
}

nlohmann::json verdict_json(int index, const ddp::ResolveResult& r) {
  const ddp::PreferenceVerdict& v = r.verdict;
  nlohmann::json j;
  j["utterance"] = index;
  j["status"] = ddp::to_string(v.status);
  j["winner"] = ddp::to_string(v.winner);
  j["garden_path"] = v.garden_path;
  nlohmann::json pronouns = nlohmann::json::object();
  for (const std::string& var : v.pronoun_order) {
    if (v.status == ddp::Status::Determinate) {
      pronouns[var] = ddp::display_name(v.top_assignment().at(var));
    } else {
      nlohmann::json tie = nlohmann::json::array();
      for (size_t idx : v.groups[0]) {
        std::string name = ddp::display_name(v.assignments[idx].at(var));
        bool seen = false;
        for (const auto& t : tie) seen = seen || t == name;
        if (!seen) tie.push_back(name);
      }
      pronouns[var] = tie;
    }
  }
  j["pronouns"] = pronouns;
  nlohmann::json trace = nlohmann::json::array();
  for (const ddp::TraceStep& step : v.trace)
    trace.push_back({{"source", step.source},
                     {"verdict", step.verdict},
                     {"action", step.action}});
  j["trace"] = trace;
  return j;
}

int run_resolve(const std::string& input, const std::string& kb_path,
                bool trace, const std::string& format) {
  if (!std::filesystem::exists(input)) {
    std::cerr << "error: no such file: " << input << "\n";
    return 2;
  }
  auto kb = load_kb(kb_path);
  std::vector<ddp::Ilf> utterances = ddp::load_discourse_file(input);
  ddp::Context ctx = ddp::init_context(kb);
  std::vector<ddp::ResolveResult> results =
      ddp::resolve_discourse(ctx, utterances);

  if (format == "json") {
    nlohmann::json j;
    j["file"] = input;
    j["utterances"] = nlohmann::json::array();
    for (size_t i = 0; i < results.size(); ++i) {
      nlohmann::json u = verdict_json(static_cast<int>(i) + 1, results[i]);
      if (trace)
        u["context"] =
            nlohmann::json::parse(ddp::dump_context_json(results[i].output));
      j["utterances"].push_back(u);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < results.size(); ++i) {
      if (trace) {
        for (const ddp::TraceStep& step : results[i].verdict.trace)
          std::cout << "  source=" << step.source << " verdict=" << step.verdict
                    << " action=" << step.action << "\n";
      }
      std::cout << verdict_line(static_cast<int>(i) + 1, results[i].verdict)
                << "\n";
      if (trace)
        std::cout << "  context: " << ddp::dump_context_json(results[i].output)
                  << "\n";
    }
  }
  return 0;
}

int run_survey(const std::string& kb_path, const std::string& format) {
  auto kb = load_kb(kb_path);
  ddp::SurveyReport report = ddp::run_survey_suite(kb);
  if (format == "json")
    std::cout << ddp::render_survey_json(report) << "\n";
  else
    std::cout << ddp::render_survey_text(report);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier discourse processor: indefeasible grammar boundary, "
               "defeasible pronoun-resolution pragmatics"};
  app.require_subcommand(1);

  std::string kb_path = default_kb_path();
  std::string format = "text";
  bool trace = false;

  auto* resolve_cmd =
      app.add_subcommand("resolve", "Resolve the pronouns of a discourse file");
  std::string input;
  resolve_cmd->add_option("file", input, "discourse file (one ILF per line)")
      ->required();
  resolve_cmd->add_option("--kb", kb_path, "knowledge base file");
  resolve_cmd->add_flag("--trace", trace, "print per-source trace and context dumps");
  resolve_cmd->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* survey_cmd =
      app.add_subcommand("survey", "Reproduce the survey tables end to end");
  survey_cmd->add_option("--kb", kb_path, "knowledge base file");
  survey_cmd->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (resolve_cmd->parsed()) return run_resolve(input, kb_path, trace, format);
    return run_survey(kb_path, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
