#pragma once

#include <stdexcept>
#include <string>

namespace anchormine {

// Base for all toolkit errors. CLI maps these to exit code 2 (data/format),
// except where noted at the call site.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct CountsMismatch : Error {
    explicit CountsMismatch(const std::string& msg) : Error("rle counts mismatch: " + msg) {}
};

struct ParseError : Error {
    ParseError(long long line_num, const std::string& msg)
        : Error("parse error at line " + std::to_string(line_num) + ": " + msg), line(line_num) {}
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg), line(-1) {}
    long long line;
};

struct EmptyMask : Error {
    explicit EmptyMask(const std::string& msg) : Error("empty mask: " + msg) {}
};

struct MissingEmbedding : Error {
    MissingEmbedding(int frame, const std::string& id)
        : Error("missing embedding for frame " + std::to_string(frame) + ", id '" + id + "'") {}
};

struct DuplicateFrame : Error {
    explicit DuplicateFrame(int frame)
        : Error("duplicate anchor frame " + std::to_string(frame)) {}
};

struct InvalidScenario : Error {
    explicit InvalidScenario(const std::string& reason) : Error("invalid scenario: " + reason) {}
};

struct UnknownFamily : Error {
    explicit UnknownFamily(const std::string& family) : Error("unknown scenario family '" + family + "'") {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error("length mismatch: " + msg) {}
};

struct EmptyDataset : Error {
    EmptyDataset() : Error("empty dataset: no videos to aggregate") {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

}  // namespace anchormine
