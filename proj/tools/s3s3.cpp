#include "nk/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace nk;
  CLI::App app{"Hitchin structures and nearly Kaehler geometry on S3 x S3"};
  app.require_subcommand(1);

  std::string path;
  double eps = 1e-10;
  auto* classify = app.add_subcommand("classify", "tau, orbit and induced J of a 3-form");
  classify->add_option("psi", path, "3-form JSON {degree, coeffs}")->required();
  classify->add_option("--eps", eps, "orbit degeneracy threshold on |tau|");

  auto* pipeline = app.add_subcommand("pipeline", "I -> J_I -> pi(J_I) -> J_pi(J_I), with checks");
  pipeline->add_option("acs", path, "orthogonal structure JSON {A, B, C}")->required();

  std::optional<std::string> curvature_path;
  std::optional<double> t;
  auto* curvature = app.add_subcommand("curvature", "Ricci of g_I: Koszul oracle against closed forms");
  curvature->add_option("acs", curvature_path, "orthogonal structure JSON");
  curvature->add_option("--t", t, "use the planar family member with this t = sqrt(1 - x)");

  verify::VerificationConfig config;
  std::string format = "csv";
  std::optional<std::string> out_path;
  std::optional<double> tol_all;
  std::map<std::string, double> tol_overrides;
  auto* verify_cmd = app.add_subcommand("verify", "seeded sweep over every identity");
  verify_cmd->add_option("--seed", config.seed);
  verify_cmd->add_option("--samples", config.samples)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", config.threads);
  verify_cmd->add_option("--out", out_path, "write the report here instead of stdout");
  verify_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--tol-all", tol_all, "override every tolerance");
  for (const auto& name : verify::check_names())
    verify_cmd->add_option_function<double>("--tol-" + name, [&tol_overrides, name](double v) {
      tol_overrides[name] = v;
    });

  std::uint64_t seed = 42;
  bool ao_minus = false;
  auto* sample = app.add_subcommand("sample", "emit a seeded orthogonal structure");
  sample->add_option("--seed", seed);
  sample->add_flag("--ao-minus", ao_minus, "reject until x < 3/4");

  auto* dform = app.add_subcommand("dform", "emit d omega_I for a structure");
  dform->add_option("acs", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }

  if (*classify) return cli::cmd_classify(path, eps, std::cout, std::cerr);
  if (*pipeline) return cli::cmd_pipeline(path, std::cout, std::cerr);
  if (*curvature) return cli::cmd_curvature(curvature_path, t, std::cout, std::cerr);
  if (*verify_cmd) {
    if (tol_all)
      for (auto& [name, tol] : config.tolerances) tol = *tol_all;
    for (const auto& [name, tol] : tol_overrides) config.tolerances[name] = tol;
    return cli::cmd_verify(config, format == "json" ? cli::Format::json : cli::Format::csv, out_path, std::cout,
                           std::cerr);
  }
  if (*sample) return cli::cmd_sample(seed, ao_minus, std::cout, std::cerr);
  if (*dform) return cli::cmd_dform(path, std::cout, std::cerr);
  return cli::kExitInputError;
}
