#pragma once

namespace anchormine {

inline constexpr const char* kToolVersion = "0.1.0";

// Version stamp carried by every JSON artifact this tool writes.
inline constexpr int kFormatVersion = 1;

}  // namespace anchormine
