// Subcommands of the `tic` tool. Each returns the process exit code:
// 0 success, 2 configuration error, 3 data error. Diagnostics go to `err`.

#ifndef TIC_TOOLS_COMMANDS_HPP_
#define TIC_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace tic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

/// `overrides` holds run-config keys from command-line flags; they are
/// applied on top of the JSON file at `config_path`.
int cmd_cluster(const std::optional<std::string>& config_path, const nlohmann::json& overrides,
                std::ostream& out, std::ostream& err);

int cmd_baseline(const std::optional<std::string>& config_path, const nlohmann::json& overrides,
                 std::ostream& out, std::ostream& err);

int cmd_score(const std::string& ref_path, const std::string& hyp_path,
              const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err);

int cmd_synth(const std::optional<std::string>& spec_path, const std::string& out_dir,
              std::ostream& out, std::ostream& err);

}  // namespace tic::cli

#endif  // TIC_TOOLS_COMMANDS_HPP_
