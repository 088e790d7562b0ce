#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace grpkit::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kComputeError = 3 };

struct RunOptions {
    bool json = false;
    bool timing = true;
    bool equations = false;
    std::optional<std::string> blocks;
};

int cmd_dd(const std::string& path, int k, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_classify(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_batch(const std::string& dir, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grpkit::cli
