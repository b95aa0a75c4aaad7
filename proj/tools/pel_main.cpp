// Copyright 2026 The pel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "CLI11.hpp"
#include "pel/app/run.hpp"

int main(int argc, char **argv) {
    CLI::App cli{"Linear-optical processing of imperfect single-photon sources"};
    cli.set_version_flag("--version", std::string(pel::app::version()));

    pel::app::RunOptions opts;
    std::string target;
    std::uint64_t seed = 0;
    int cutoff = 0;
    unsigned threads = 0;
    std::string out;
    std::string format;
    int trials = 0;
    std::string spec;

    cli.add_option("command", opts.command, "simulate | efficiency | nogo-search | verify")->required();
    cli.add_option("target", target, "verify target: commutation | bernoulli");
    auto *spec_opt = cli.add_option("--spec", spec, "experiment spec (JSON)");
    auto *seed_opt = cli.add_option("--seed", seed, "RNG seed");
    auto *cutoff_opt = cli.add_option("--cutoff", cutoff, "photon-number cutoff")->check(CLI::NonNegativeNumber);
    auto *threads_opt = cli.add_option("--threads", threads, "worker threads (default: all cores)");
    auto *out_opt = cli.add_option("--out", out, "write the result here instead of stdout");
    auto *format_opt = cli.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    auto *trials_opt = cli.add_option("--trials", trials, "verify: number of random trials")->check(CLI::PositiveNumber);

    try {
        cli.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return cli.exit(e);
    } catch (const CLI::ParseError &e) {
        cli.exit(e);
        return pel::app::exit_code::validation;
    }

    if (!target.empty()) {
        opts.target = target;
    }
    if (*spec_opt) {
        opts.spec_path = spec;
    }
    if (*seed_opt) {
        opts.seed = seed;
    }
    if (*cutoff_opt) {
        opts.cutoff = cutoff;
    }
    if (*threads_opt) {
        opts.threads = threads;
    }
    if (*out_opt) {
        opts.out = out;
    }
    if (*format_opt) {
        opts.format = format;
    }
    if (*trials_opt) {
        opts.trials = trials;
    }
    return pel::app::run(opts, std::cout, std::cerr);
}
