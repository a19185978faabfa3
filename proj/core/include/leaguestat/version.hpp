#pragma once

namespace leaguestat {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace leaguestat
