// Copyright 2026 The Guideline Structure Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// structure: command-line front end.
//
//   structure parse    --in FILE --format text|json
//   structure segment  --in FILE [--lexicon FILE]
//   structure features --in FILE --couples all|gold [--gold FILE]
//   structure tree     --in FILE --out tree.json
//   structure emit     --tree tree.json --out doc.xml
//   structure eval     --pred DIR --gold DIR --report report.json
//   structure serve    --listen HOST:PORT --store DIR

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "structure/corpus.hpp"
#include "structure/error.hpp"
#include "structure/gem_xml.hpp"
#include "structure/http_api.hpp"
#include "structure/pipeline.hpp"
#include "structure/review_service.hpp"

namespace {

using namespace structure;

struct LexiconPaths {
  std::string triggers;
  std::string relations;
  std::string abbreviations;

  void AddTo(CLI::App* cmd) {
    cmd->add_option("--lexicon", triggers, "trigger lexicon JSON")
        ->envname("STRUCTURE_LEXICON");
    cmd->add_option("--relations", relations, "relation lexicon JSON")
        ->envname("STRUCTURE_RELATIONS");
    cmd->add_option("--abbreviations", abbreviations, "abbreviation list")
        ->envname("STRUCTURE_ABBREVIATIONS");
  }

  PipelineConfig Load() const {
    auto opt = [](const std::string& s) -> std::optional<std::filesystem::path> {
      if (s.empty()) return std::nullopt;
      return std::filesystem::path(s);
    };
    return PipelineConfig::Load(opt(triggers), opt(relations), opt(abbreviations));
  }
};

struct InputArgs {
  std::string path;
  std::string format = "auto";

  void AddTo(CLI::App* cmd) {
    cmd->add_option("--in", path, "input document")->required();
    cmd->add_option("--format", format, "text, json or auto (by extension)")
        ->check(CLI::IsMember({"auto", "text", "json"}));
  }

  GuidelineDocument Parse(const PipelineConfig& config) const {
    const InputFormat f =
        format == "auto" ? GuessInputFormat(path) : InputFormatFromName(format);
    return ParseInput(ReadFile(path), f, config, DocIdFromPath(path));
  }
};

void WriteOutput(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
}

nlohmann::json ReadJson(const std::string& path) {
  try {
    return nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, path + ": " + e.what());
  }
}

std::string FeatureRecord(const std::string& c, const std::string& s, const CoupleFeatures& f,
                          const std::optional<CoupleLabel>& label) {
  nlohmann::json j = {{"condition", c}, {"segment", s}, {"features", FeaturesToJson(f)}};
  const ScopeDecision d = DecideScope(f);
  j["decision"] = {{"verdict", VerdictName(d.verdict)}, {"fired_rule", RuleName(d.fired_rule)}};
  if (label) j["label"] = *label == CoupleLabel::kPositive ? "positive" : "negative";
  return j.dump() + "\n";
}

int Serve(const std::string& listen, const std::string& store_dir, const PipelineConfig& config) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::kInvalidInput, "--listen expects HOST:PORT");
  }
  const std::string host = listen.substr(0, colon);
  const int port = std::stoi(listen.substr(colon + 1));
  ReviewStore store(config, std::filesystem::path(store_dir));
  httplib::Server server;
  InstallRoutes(server, store);
  std::cerr << "structure: serving " << store.List().size() << " session(s) from " << store_dir
            << " on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    throw Error(ErrorKind::kIo, "cannot listen on " + listen);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guideline structuring: condition/recommendation segments, scope trees, GEM XML"};
  app.require_subcommand(1);

  LexiconPaths lex;
  InputArgs input;
  std::string out_path;

  auto* parse = app.add_subcommand("parse", "ingest a document and print its JSON");
  input.AddTo(parse);
  lex.AddTo(parse);
  parse->add_option("--out", out_path, "output file (stdout by default)");

  auto* segment = app.add_subcommand("segment", "detect condition and recommendation segments");
  input.AddTo(segment);
  lex.AddTo(segment);
  segment->add_option("--out", out_path, "output file (stdout by default)");

  std::string couples = "all";
  std::string gold_path;
  auto* features = app.add_subcommand("features", "emit one feature record per couple");
  input.AddTo(features);
  lex.AddTo(features);
  features->add_option("--couples", couples, "all: detected segments; gold: a gold file")
      ->check(CLI::IsMember({"all", "gold"}));
  features->add_option("--gold", gold_path, "gold file (required with --couples gold)");
  features->add_option("--out", out_path, "output file (stdout by default)");

  auto* tree = app.add_subcommand("tree", "run the full pipeline and write the scope tree");
  input.AddTo(tree);
  lex.AddTo(tree);
  tree->add_option("--out", out_path, "output file (stdout by default)");

  std::string tree_path;
  auto* emit = app.add_subcommand("emit", "serialize a scope tree to GEM XML");
  emit->add_option("--tree", tree_path, "tree JSON")->required();
  emit->add_option("--out", out_path, "output file (stdout by default)");

  std::string pred_dir;
  std::string gold_dir;
  std::string report_path;
  auto* eval = app.add_subcommand("eval", "score predicted trees against gold annotations");
  eval->add_option("--pred", pred_dir, "predicted trees (pipeline runs when omitted)");
  eval->add_option("--gold", gold_dir, "gold directory")->required();
  eval->add_option("--report", report_path, "report JSON (stdout by default)");
  lex.AddTo(eval);

  std::string listen = "127.0.0.1:8080";
  std::string store_dir = "store";
  auto* serve = app.add_subcommand("serve", "run the review service");
  serve->add_option("--listen", listen, "HOST:PORT")->envname("STRUCTURE_LISTEN");
  serve->add_option("--store", store_dir, "session store directory")->envname("STRUCTURE_STORE");
  lex.AddTo(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    const PipelineConfig config = lex.Load();
    if (*parse) {
      WriteOutput(out_path, DocumentToJson(input.Parse(config)).dump(2) + "\n");
    } else if (*segment) {
      const GuidelineDocument doc = input.Parse(config);
      nlohmann::json j = nlohmann::json::array();
      for (const auto& s : DetectSegments(doc, config.triggers)) j.push_back(SegmentToJson(s));
      WriteOutput(out_path, j.dump(2) + "\n");
    } else if (*features) {
      const GuidelineDocument doc = input.Parse(config);
      std::string records;
      if (couples == "gold") {
        if (gold_path.empty()) throw Error(ErrorKind::kInvalidInput, "--couples gold needs --gold");
        const GoldAnnotation gold = GoldAnnotation::FromTree(TreeFromJson(ReadJson(gold_path)));
        for (const auto& c : ExtractExamples(gold, doc, config.relations)) {
          records += FeatureRecord(c.condition_id, c.segment_id, c.features, c.label);
        }
      } else {
        const PipelineResult r = RunPipeline(doc, config);
        const DocumentIndex index(r.doc);
        const std::vector<Segment> segs = SegmentsOf(r.tree);
        for (const auto& ref : GoldCouples(r.tree)) {
          auto find = [&](const std::string& id) {
            return *std::find_if(segs.begin(), segs.end(),
                                 [&](const Segment& s) { return s.id == id; });
          };
          records += FeatureRecord(
              ref.condition_id, ref.segment_id,
              ExtractFeatures(find(ref.condition_id), find(ref.segment_id), index,
                              config.relations),
              std::nullopt);
        }
      }
      WriteOutput(out_path, records);
    } else if (*tree) {
      const PipelineResult r = RunPipeline(input.Parse(config), config);
      WriteOutput(out_path, TreeToJson(r.tree).dump(2) + "\n");
    } else if (*emit) {
      WriteOutput(out_path, EmitXml(TreeFromJson(ReadJson(tree_path))));
    } else if (*eval) {
      std::optional<std::filesystem::path> pred;
      if (!pred_dir.empty()) pred = pred_dir;
      const EvaluationReport report = EvaluateDirectories(pred, gold_dir, config);
      WriteOutput(report_path, ReportToJson(report).dump(2) + "\n");
    } else if (*serve) {
      return Serve(listen, store_dir, config);
    }
  } catch (const Error& e) {
    std::cerr << "structure: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "structure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
