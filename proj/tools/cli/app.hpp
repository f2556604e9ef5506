#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ddff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDivergence = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace ddff::cli
