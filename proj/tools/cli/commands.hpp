#pragma once

#include "config.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ddff::cli {

struct Context {
  json config;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct Output {
  std::string csv;
  json report = json::object();
  // (suffix, contents) written next to the main CSV
  std::vector<std::pair<std::string, std::string>> extra_files;
};

Output run_seq(const Context& ctx);
Output run_ff_scan(const Context& ctx);
Output run_order_fit(const Context& ctx);
Output run_dynamics(const Context& ctx);
Output run_plateau_scan(const Context& ctx);
Output run_oracle(const Context& ctx);
Output run_two_stage(const Context& ctx);

// "%.17g"; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

}  // namespace ddff::cli
