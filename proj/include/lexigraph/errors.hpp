#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexigraph {

// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Unsupported or inconsistent file format (bad version stamp, dangling references).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File that cannot be opened, read, or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Attribute outside a fixed inventory, or two inventories that do not line up.
class InventoryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration or unusable inputs; maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure inside a named pipeline stage; maps to exit code 1 in the CLI.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(stage) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

} // namespace lexigraph
