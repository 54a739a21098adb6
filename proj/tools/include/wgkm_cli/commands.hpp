#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wgkm/error.hpp"
#include "wgkm_cli/expr.hpp"
#include "wgkm_cli/render.hpp"

namespace wgkm::cli {

/** JSON body for stdout plus the process exit code (verify reports failures via 3). */
struct CommandResult {
    json body;
    int exit_code = 0;
};

CommandResult cmd_describe(const std::string& space);
CommandResult cmd_gkm(const std::string& space, const std::string& variety);
CommandResult cmd_chern(const std::string& space, const std::string& bundle,
                        const std::string& mode, std::optional<std::uint32_t> max_degree);
CommandResult cmd_todd(const std::string& space, const std::string& bundle,
                       std::optional<std::uint32_t> max_degree);
CommandResult cmd_integrate(const std::string& space, const std::string& expr_text);
CommandResult cmd_euler(const std::string& space);
CommandResult cmd_betti(const std::string& space, const std::string& variety);
CommandResult cmd_verify(const std::string& space, const std::string& level);
CommandResult cmd_dims(const std::string& space, int max_degree);
CommandResult cmd_cache_rebuild(const std::string& space);
CommandResult cmd_cache_clear();

/** Exit-code contract: 0 ok, 1 usage, 2 computation, 3 verification. */
int exit_code_of(ErrorKind k);

/** Evaluates a parsed expression on the fixed-point graph of X or of the slice Y. */
EqClass evaluate_expr(const ClassExpr& expr, const WonderfulVariety& wv, bool on_slice);

} // namespace wgkm::cli
