// Copyright 2026 The chancap authors
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

#include <string>

#include "CLI11.hpp"

#include "chancap/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Constrained channel-capacity toolkit"};
  app.require_subcommand(1);

  chancap::RunConfig config;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub, bool needs_channel) {
    if (needs_channel) {
      sub->add_option("--channel", config.channel_spec,
                      "Channel spec: name:key=value,... | inline JSON | JSON file")
          ->required();
    }
    sub->add_option("--out", config.out_path,
                    "Output path (default: stdout)");
    sub->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", config.seed, "Base RNG seed")
        ->each([&](const std::string&) { config.seed_set = true; });
  };

  CLI::App* capcurve = app.add_subcommand(
      "capcurve", "Constrained-capacity curve over a grid of rate levels");
  add_common(capcurve, true);
  capcurve->add_option("--grid", config.grid, "Rate grid start:stop:step");
  capcurve->add_option("--budget", config.budget,
                       "Optimizer sample budget per grid point")
      ->check(CLI::PositiveNumber);

  CLI::App* scan = app.add_subcommand(
      "scan", "Monte Carlo scan of the rate functional over random states");
  add_common(scan, true);
  scan->add_option("--n", config.n, "Number of sampled states")
      ->check(CLI::PositiveNumber);
  scan->add_option("--bin-width", config.bin_width, "Histogram bin width")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand(
      "verify", "Randomized property checks for the entropy inequalities");
  add_common(verify, false);
  verify->add_option("--n", config.n, "Instances per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--checks", config.checks,
                     "Subset of checks (default: all)")
      ->delimiter(',');

  CLI::App* info = app.add_subcommand("info", "Describe a channel spec");
  add_common(info, true);

  CLI::App* eve = app.add_subcommand(
      "eve-bound", "Maximize leaked information under a rate constraint");
  add_common(eve, true);
  eve->add_option("--rate", config.constraint_y,
                  "Required mutual-information level")
      ->required();
  eve->add_option("--tol", config.constraint_tol, "Constraint tolerance")
      ->check(CLI::PositiveNumber);
  eve->add_option("--rho-w", config.rho_w,
                  "Reference marginal: maximally_mixed | pure0 | diag=<p>");
  eve->add_option("--encoding", config.encoding,
                  "Encoding ensemble: identity | weyl | reset");
  eve->add_option("--budget", config.budget, "Optimizer sample budget")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (capcurve->parsed()) config.command = chancap::Command::kCapcurve;
  if (scan->parsed()) config.command = chancap::Command::kScan;
  if (verify->parsed()) config.command = chancap::Command::kVerify;
  if (info->parsed()) config.command = chancap::Command::kInfo;
  if (eve->parsed()) config.command = chancap::Command::kEveBound;
  config.format = format == "json" ? chancap::OutputFormat::kJson
                                   : chancap::OutputFormat::kCsv;

  return chancap::run(config);
}
