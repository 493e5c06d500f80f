// Command-line front end: `fuse` evaluates score files, `synth` writes a seeded fixture.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dstfuse/dstfuse.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct FuseArgs {
  std::vector<std::string> scores;
  std::string labels;
  std::string format = "csv";
  std::string policy = "literal";
  double theta_floor = 1e-3;
  bool per_sample = false;
  std::string out;
  std::string report_format = "json";
  unsigned threads = 0;
};

struct SynthArgs {
  std::size_t classes = 0;
  std::size_t models = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_fuse(const FuseArgs& args) {
  using namespace dstfuse;
  const auto format = parse_score_format(args.format);
  BuildPolicy policy{parse_build_mode(args.policy), args.theta_floor};
  policy.validate();

  std::vector<ScoreMatrix> models;
  models.reserve(args.scores.size());
  for (const auto& path : args.scores) models.push_back(load_scores(path, format));
  const auto labels = load_labels(args.labels);

  const auto report = evaluate(models, labels, policy, EvaluateOptions{args.threads});
  const std::string text = args.report_format == "table" ? report_table_text(report)
                                                         : report_json_text(report, args.per_sample);
  if (args.out.empty())
    std::cout << text;
  else
    write_text_file(args.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dempster-Shafer fusion of classifier scores"};
  app.require_subcommand(1);

  FuseArgs fuse;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse per-model score files and report accuracies");
  fuse_cmd->add_option("--scores", fuse.scores, "Score file per model")->required()->expected(1, -1);
  fuse_cmd->add_option("--labels", fuse.labels, "Labels CSV (sample_id,label)")->required();
  fuse_cmd->add_option("--format", fuse.format, "Score file format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  fuse_cmd->add_option("--policy", fuse.policy, "Mass construction policy")
      ->check(CLI::IsMember({"literal", "residual-theta"}));
  fuse_cmd->add_option("--theta-floor", fuse.theta_floor, "Mass reserved on the whole frame");
  fuse_cmd->add_flag("--per-sample", fuse.per_sample, "Include per-sample details in the JSON report");
  fuse_cmd->add_option("--out", fuse.out, "Report path (stdout when omitted)");
  fuse_cmd->add_option("--report-format", fuse.report_format, "Report rendering")
      ->check(CLI::IsMember({"json", "table"}));
  fuse_cmd->add_option("--threads", fuse.threads, "Worker threads (0 = DST_FUSE_THREADS or auto)");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic fixture");
  synth_cmd->add_option("--classes", synth.classes)->required();
  synth_cmd->add_option("--models", synth.models)->required();
  synth_cmd->add_option("--samples", synth.samples)->required();
  synth_cmd->add_option("--seed", synth.seed)->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*fuse_cmd) run_fuse(fuse);
    if (*synth_cmd)
      dstfuse::generate_fixture({synth.classes, synth.models, synth.samples, synth.seed}, synth.out);
  } catch (const dstfuse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_io() ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
