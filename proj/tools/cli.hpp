#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace amoebakit::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParseError = 2,
    kBalancingViolation = 3,
    kAmbiguousOrder = 4,
    kFalsification = 5,
};

struct RunConfig {
    std::size_t resolution = 512;
    std::string window = "auto";
    int angle_samples = 720;
    int quad_n = 256;
    std::vector<double> t_schedule;
    std::uint64_t seed = 7;
    double root_tolerance = 1e-10;
    int max_iterations = 200;
    std::filesystem::path out = "amoebakit_out";

    RunConfig();
    /// Throws std::invalid_argument on a nonpositive tolerance or a schedule outside (0, 1/e].
    void validate() const;
    /// Canonical key=value text; hashed into every provenance block.
    std::string canonical() const;
};

/// Applies one key=value setting; throws std::invalid_argument on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key=value file ('#' starts a comment).
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Entry point; returns the process exit code. Messages go to stdout/stderr.
int run(const std::vector<std::string>& args);

}  // namespace amoebakit::cli
