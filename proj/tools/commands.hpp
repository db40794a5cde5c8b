#pragma once

#include <iosfwd>

#include "cli.hpp"

namespace spdlog {
class logger;
}

namespace pot::cli {

struct Context {
  const RunConfig& config;
  std::ostream& out;
  spdlog::logger& log;
};

void cmd_prototypes(const Context& ctx);
void cmd_score(const Context& ctx);
void cmd_eval(const Context& ctx);
void cmd_sweep(const Context& ctx);
void cmd_synth(const Context& ctx);

}  // namespace pot::cli
