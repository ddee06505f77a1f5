#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "anthroscore/backend.hpp"
#include "anthroscore/config.hpp"
#include "anthroscore/errors.hpp"
#include "anthroscore/runner.hpp"
#include "anthroscore/stub_server.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  // Raw key=value overrides applied after the config file, in order.
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "key = value config file");
  auto push = [&args](const std::string& key) {
    return [&args, key](const std::string& value) {
      args.overrides.emplace_back(key, value);
    };
  };
  cmd->add_option_function<std::string>("--corpus", push("corpus"),
                                        "documents JSONL path");
  cmd->add_option_function<std::string>("--lexicon", push("lexicon"),
                                        "entity lexicon: artifact, lm, human, or a path");
  cmd->add_option_function<std::string>("--data-dir", push("data_dir"),
                                        "bundled data directory");
  cmd->add_option_function<std::string>("--backend", push("backend"),
                                        "backend kind: stub or remote");
  cmd->add_option_function<std::string>("--model", push("model"), "model id");
  cmd->add_option_function<std::string>("--endpoint", push("endpoint"),
                                        "remote backend base URL");
  cmd->add_option_function<std::string>("--mask-token", push("mask_token"),
                                        "mask token the model expects");
  cmd->add_option_function<std::string>("--cache", push("cache"),
                                        "distribution cache path");
  cmd->add_option_function<std::string>("--pronouns", push("pronouns"),
                                        "pronoun inventory file");
  cmd->add_option_function<std::string>("--hi", push("hi"), "high threshold");
  cmd->add_option_function<std::string>("--lo", push("lo"), "low threshold");
  cmd->add_option_function<std::string>("--prior-band", push("prior_band"),
                                        "|A| band feeding the verb prior");
  cmd->add_option_function<std::string>("--seed", push("seed"), "bootstrap seed");
  cmd->add_option_function<std::string>("--output-dir", push("output_dir"),
                                        "output directory");
  cmd->add_option_function<std::string>("--workers", push("workers"),
                                        "scoring worker count");
  cmd->add_option_function<std::string>("--conllu", push("conllu"),
                                        "CoNLL-U parse sidecar");
  cmd->add_option_function<std::string>("--conllu-manifest", push("conllu_manifest"),
                                        "parse manifest JSONL");
  cmd->add_option_function<std::string>("--filter-keywords", push("filter_keywords"),
                                        "document keyword filter file");
}

anthro::RunConfig build_config(const CommonArgs& args) {
  anthro::RunConfig config;
  if (!args.config_path.empty()) config = anthro::load_run_config(args.config_path);
  for (const auto& [key, value] : args.overrides) {
    anthro::apply_config_key(config, key, value);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicit-anthropomorphism scoring and corpus analytics"};
  app.require_subcommand(1);

  CommonArgs score_args, analyze_args, verbs_args, ablate_args, freq_args;
  std::string group_by = "source";
  std::string ablation;
  std::size_t top_k = 20;

  auto* score = app.add_subcommand("score", "mask and score a corpus");
  add_common(score, score_args);

  auto* analyze = app.add_subcommand("analyze", "grouped means with bootstrap CIs");
  add_common(analyze, analyze_args);
  analyze->add_option("--group-by", group_by, "category, year, entity, or source");

  auto* verbs = app.add_subcommand("verbs", "weighted log-odds over verb lemmas");
  add_common(verbs, verbs_args);

  auto* ablate = app.add_subcommand("ablate", "robustness checks");
  add_common(ablate, ablate_args);
  ablate->add_option("--ablation", ablation,
                     "pronoun:<w>, reporting_verbs, or top_verbs:<k>")
      ->required();

  auto* freq = app.add_subcommand("freq-report", "chunk-head frequency ranking");
  add_common(freq, freq_args);
  freq->add_option("--top-k", top_k, "rows to report");

  auto* serve = app.add_subcommand("serve-stub", "run the stub fill-mask HTTP server");
  std::string host = "127.0.0.1";
  int port = 8111;
  std::string stub_model = "stub-lexical";
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "bind port");
  serve->add_option("--model", stub_model, "stub-uniform or stub-lexical");

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return anthro::cmd_score(build_config(score_args));
    if (analyze->parsed()) return anthro::cmd_analyze(build_config(analyze_args), group_by);
    if (verbs->parsed()) return anthro::cmd_verbs(build_config(verbs_args));
    if (ablate->parsed()) return anthro::cmd_ablate(build_config(ablate_args), ablation);
    if (freq->parsed()) return anthro::cmd_freq_report(build_config(freq_args), top_k);
    if (serve->parsed()) {
      anthro::StubBackend stub = stub_model == "stub-uniform"
                                     ? anthro::StubBackend::uniform()
                                     : anthro::StubBackend::lexical();
      anthro::StubServer server(std::move(stub));
      std::cerr << "serving " << stub_model << " on " << host << ":" << port << "\n";
      server.run(host, port);
      return 0;
    }
  } catch (const anthro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
