#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fls/cli/json_io.hpp"

namespace fls::cli {

/// Tolerance default, overridden by the FLS_TOLERANCE environment variable.
double default_tolerance();

struct JobSpec {
    /// e.g. {"matroid", "rank"} or {"potentials"}
    std::vector<std::string> command;
    /// Empty or "-" means stdin / stdout.
    std::string input;
    std::string output;

    double h = 1e-5;
    bool richardson = true;
    /// Coefficient spread and z-constancy tolerance for potentials.
    double tolerance = 1e-6;
    /// Axiom residual above which verification fails.
    double threshold = 1e-4;
    /// Truncation order of the second-kind potential; 0 means mk + 3.
    int n_max = 0;
    int max_system_size = 32;
    std::size_t max_items = 200000;
    int samples = 4;
    /// Sample radius relative to 1 + |x|.
    double radius = 0.05;
    bool strict_order = false;
    bool allow_k_ge_2 = false;
    /// strong-decompose: list every decomposition.
    bool all = false;
};

std::string version();

/// Runs one subcommand on a parsed input document and returns its result
/// object. Throws fls::Error on invalid input.
Json execute(const JobSpec& job, const Json& input);

/// Reads the input, executes, writes the envelope and returns the exit code:
/// 0 on success, 2 on input or domain errors, 1 on internal errors.
int run(const JobSpec& job, std::istream& in, std::ostream& out);

/// Command line entry point.
int main_entry(int argc, char** argv);

}  // namespace fls::cli
