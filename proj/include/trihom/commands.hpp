// Copyright 2026 The Trihom Authors.
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

// Command surface: configuration handling and the six subcommands. Every
// report embeds the effective configuration it was produced with.

#ifndef TRIHOM_COMMANDS_HPP_
#define TRIHOM_COMMANDS_HPP_

#include <filesystem>
#include <ostream>

#include "trihom/io.hpp"

namespace trihom {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDegenerate = 2,
  kExitVerification = 3,
};

/// Built-in defaults for every section.
Json default_config();

/// Sets a dotted key ("sweep.seeds") to a value parsed as JSON, or as a
/// plain string when it does not parse. Throws kInvalidArgument on a path
/// through a non-object.
void set_config_value(Json& config, const std::string& dotted_key,
                      const std::string& value);

/// Checks tolerances, seeds and axis specifications. Throws kInvalidArgument.
void validate_config(const Json& config);

/// Output directory: TRIHOM_OUTPUT_DIR when set, else config["output_dir"].
std::filesystem::path output_dir(const Json& config);

/// Axis given as a list of numbers or {"start","stop","step"}.
std::vector<double> axis_from_json(const Json& spec);

/// Each command writes its outputs under output_dir(config), logs to `log`
/// and returns an ExitCode. Library errors propagate as trihom::Error.
int cmd_generate(const Json& config, std::ostream& log);
int cmd_metrics(const Json& config, std::ostream& log);
int cmd_trihom(const Json& config, std::ostream& log);
int cmd_verify(const Json& config, std::ostream& log);
int cmd_sweep(const Json& config, std::ostream& log);
int cmd_correlate(const Json& config, std::ostream& log);

/// Full command line entry point: parses flags, builds the effective config
/// (defaults, then --config file, then --set, then named flags), dispatches
/// and maps errors onto exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace trihom

#endif  // TRIHOM_COMMANDS_HPP_
